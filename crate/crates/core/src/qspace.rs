//! Quadratic spaces in diagonal form and their isotropic subspaces.
//!
//! A space is a diagonal `<d_1, ..., d_N>` with entries in `{1, 0, -1}`; the
//! kernel `K` is spanned by the standard basis vectors sitting over the zero
//! entries. Isotropic subspaces are stored as explicit coordinate vectors so
//! that basis independence downstream can be tested by actual changes of
//! basis.

use std::fmt;

use rand::Rng;

use crate::error::Error;
use crate::linalg::{self, ExactMatrix, RowSpace, Vector};
use crate::scalar::GaussianRational as Q;
use crate::Result;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSpace {
    diagonal: Vec<i8>,
}

impl QuadraticSpace {
    /// Builds the space `<entries>`; entries must lie in `{1, 0, -1}` and the
    /// space must be nontrivial.
    pub fn diagonal_form(entries: &[i64]) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyForm);
        }
        let mut diagonal = Vec::with_capacity(entries.len());
        for &e in entries {
            match e {
                -1 | 0 | 1 => diagonal.push(e as i8),
                other => return Err(Error::InvalidDiagonalEntry(other.to_string())),
            }
        }
        Ok(QuadraticSpace { diagonal })
    }

    /// `<1, ..., 1>` of the given rank, followed by `corank` zeros.
    pub fn standard(rank: usize, corank: usize) -> Self {
        let mut diagonal = vec![1i8; rank];
        diagonal.extend(std::iter::repeat(0i8).take(corank));
        assert!(!diagonal.is_empty(), "nontrivial quadratic space required");
        QuadraticSpace { diagonal }
    }

    /// The hyperbolic plane, represented as `<1, 1>` (isometric to `<1, -1>`
    /// over a square-closed field).
    pub fn hyperbolic_plane() -> Self {
        QuadraticSpace { diagonal: vec![1, 1] }
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal(&self) -> &[i8] {
        &self.diagonal
    }

    pub fn entry(&self, k: usize) -> i8 {
        self.diagonal[k]
    }

    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|&&d| d != 0).count()
    }

    pub fn corank(&self) -> usize {
        self.dim() - self.rank()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.corank() == 0
    }

    pub fn is_zero_form(&self) -> bool {
        self.rank() == 0
    }

    /// Indices of the standard basis vectors spanning the kernel `K`.
    pub fn kernel_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.diagonal[k] == 0).collect()
    }

    pub fn nonzero_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.diagonal[k] != 0).collect()
    }

    /// Rescales `-1` entries to `1` (the basis change `v -> i·v`); idempotent.
    pub fn normalized(&self) -> Self {
        QuadraticSpace {
            diagonal: self.diagonal.iter().map(|&d| if d == 0 { 0 } else { 1 }).collect(),
        }
    }

    /// Concatenates the diagonals.
    pub fn orthogonal_sum(&self, other: &QuadraticSpace) -> QuadraticSpace {
        let mut diagonal = self.diagonal.clone();
        diagonal.extend_from_slice(&other.diagonal);
        QuadraticSpace { diagonal }
    }

    /// `q ⊥ U` with `U` the hyperbolic plane appended last.
    pub fn add_hyperbolic_plane(&self) -> QuadraticSpace {
        self.orthogonal_sum(&QuadraticSpace::hyperbolic_plane())
    }

    /// Dimension of a maximal isotropic subspace:
    /// `floor((dim V + dim K) / 2)`.
    pub fn max_isotropic_dim(&self) -> usize {
        (self.dim() + self.corank()) / 2
    }

    pub fn q_value(&self, v: &[Q]) -> Q {
        assert_eq!(v.len(), self.dim());
        let mut s = Q::zero();
        for (k, x) in v.iter().enumerate() {
            match self.diagonal[k] {
                0 => {}
                1 => {
                    if !x.is_zero() {
                        s += &(x * x);
                    }
                }
                _ => {
                    if !x.is_zero() {
                        s -= &(x * x);
                    }
                }
            }
        }
        s
    }

    /// The polar form `B(u, v) = Σ d_k u_k v_k` (so `B(v, v) = q(v)`;
    /// char ≠ 2 throughout).
    pub fn polar(&self, u: &[Q], v: &[Q]) -> Q {
        assert_eq!(u.len(), self.dim());
        assert_eq!(v.len(), self.dim());
        let mut s = Q::zero();
        for k in 0..self.dim() {
            if self.diagonal[k] == 0 || u[k].is_zero() || v[k].is_zero() {
                continue;
            }
            let t = &u[k] * &v[k];
            if self.diagonal[k] == 1 {
                s += &t;
            } else {
                s -= &t;
            }
        }
        s
    }

    /// True iff the polar form vanishes on all pairs from the list (which, in
    /// char ≠ 2, says `q` vanishes on the whole span).
    pub fn is_isotropic(&self, vectors: &[Vector]) -> bool {
        for (a, u) in vectors.iter().enumerate() {
            for v in &vectors[a..] {
                if !self.polar(u, v).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// The kernel as a row space.
    pub fn kernel_space(&self) -> RowSpace {
        let rows: Vec<Vector> = self
            .kernel_indices()
            .into_iter()
            .map(|k| linalg::unit_vector(self.dim(), k))
            .collect();
        RowSpace::from_rows(rows, self.dim())
    }

    /// Parses the CLI form syntax `1,1,0`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let v: i64 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad form entry `{tok}`")))?;
            if !matches!(v, -1 | 0 | 1) {
                return Err(Error::InvalidDiagonalEntry(tok.to_string()));
            }
            entries.push(v);
        }
        QuadraticSpace::diagonal_form(&entries)
    }
}

impl fmt::Display for QuadraticSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self.diagonal.iter().map(|d| d.to_string()).collect();
        write!(f, "<{}>", entries.join(","))
    }
}

impl fmt::Debug for QuadraticSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Which isotropic subspace to construct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsotropicSpec {
    /// A maximal isotropic subspace: hyperbolic pairs first, then the kernel.
    Max,
    /// The zero subspace (so `I^W = Cl(q)` downstream).
    Zero,
    /// A given dimension, with or without kernel vectors included.
    Dim { dim: usize, kernel: bool },
    /// Explicit basis vectors.
    Vectors(Vec<Vector>),
}

impl IsotropicSpec {
    /// Parses the CLI syntax: `max`, `zero`, `dim=2,kernel=yes`,
    /// `vecs=1,i,0,0,0;0,0,1,i,0`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "max" => return Ok(IsotropicSpec::Max),
            "zero" => return Ok(IsotropicSpec::Zero),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("vecs=") {
            let mut vectors = Vec::new();
            for row in rest.split(';') {
                let mut v = Vec::new();
                for tok in row.split(',') {
                    v.push(Q::parse(tok)?);
                }
                vectors.push(v);
            }
            return Ok(IsotropicSpec::Vectors(vectors));
        }
        if s.starts_with("dim=") {
            let mut dim = None;
            let mut kernel = false;
            for part in s.split(',') {
                let (key, value) = part
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("bad isotropic spec token `{part}`")))?;
                match key.trim() {
                    "dim" => {
                        dim = Some(value.trim().parse::<usize>().map_err(|_| {
                            Error::Parse(format!("bad isotropic dimension `{value}`"))
                        })?)
                    }
                    "kernel" => {
                        kernel = match value.trim() {
                            "yes" | "true" => true,
                            "no" | "false" => false,
                            other => {
                                return Err(Error::Parse(format!(
                                    "bad kernel flag `{other}` (want yes/no)"
                                )))
                            }
                        }
                    }
                    other => {
                        return Err(Error::Parse(format!("unknown isotropic key `{other}`")))
                    }
                }
            }
            let dim = dim.ok_or_else(|| Error::Parse("isotropic spec needs dim=".into()))?;
            return Ok(IsotropicSpec::Dim { dim, kernel });
        }
        Err(Error::Parse(format!("unrecognized isotropic spec `{s}`")))
    }
}

/// An isotropic subspace, stored with an explicit (not canonicalized) basis.
#[derive(Clone, Debug)]
pub struct IsotropicSubspace {
    space: QuadraticSpace,
    basis: Vec<Vector>,
}

impl IsotropicSubspace {
    /// Validates that the vectors are independent and span an isotropic
    /// subspace.
    pub fn new(space: QuadraticSpace, basis: Vec<Vector>) -> Result<Self> {
        for v in &basis {
            if v.len() != space.dim() {
                return Err(Error::DimensionMismatch(format!(
                    "isotropic vector has length {}, ambient dimension is {}",
                    v.len(),
                    space.dim()
                )));
            }
        }
        if !basis.is_empty() {
            let rank = ExactMatrix::from_rows(basis.clone()).rank();
            if rank != basis.len() {
                return Err(Error::NotIsotropic(
                    "basis vectors are linearly dependent".into(),
                ));
            }
        }
        if !space.is_isotropic(&basis) {
            return Err(Error::NotIsotropic(format!(
                "polar form does not vanish on the span in {space}"
            )));
        }
        Ok(IsotropicSubspace { space, basis })
    }

    pub fn space(&self) -> &QuadraticSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.space.dim() - self.dim()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn row_space(&self) -> RowSpace {
        RowSpace::from_rows(self.basis.clone(), self.space.dim())
    }

    /// `W ∩ K` as a row space.
    pub fn kernel_intersection(&self) -> RowSpace {
        self.row_space().intersect(&self.space.kernel_space())
    }

    /// Whether `K ⊆ W`.
    pub fn contains_kernel(&self) -> bool {
        self.row_space().contains_space(&self.space.kernel_space())
    }

    /// Replaces the basis by `C · basis` for an invertible matrix `C`; the
    /// subspace is unchanged, the presentation is not.
    pub fn change_basis(&self, c: &ExactMatrix) -> Result<Self> {
        assert_eq!(c.rows(), self.dim());
        assert_eq!(c.cols(), self.dim());
        if c.inverse().is_none() {
            return Err(Error::Internal("change of basis matrix is singular".into()));
        }
        let mut basis = Vec::with_capacity(self.dim());
        for r in 0..self.dim() {
            let mut v = linalg::zero_vector(self.space.dim());
            for (k, w) in self.basis.iter().enumerate() {
                linalg::add_scaled(&mut v, w, c.at(r, k));
            }
            basis.push(v);
        }
        IsotropicSubspace::new(self.space.clone(), basis)
    }

    /// Applies a linear map of the ambient space to every basis vector.
    pub fn map_ambient(&self, t: &ExactMatrix) -> Result<Self> {
        let basis = self.basis.iter().map(|v| t.apply(v)).collect();
        IsotropicSubspace::new(self.space.clone(), basis)
    }
}

/// Builds the requested isotropic subspace.
///
/// The standard maximal basis is `{(v_1 + i v_2), (v_3 + i v_4), ...,
/// e_1, ..., e_l}`: hyperbolic pairs over the nonzero diagonal entries first,
/// kernel vectors last. `-1` entries enter their pair scaled by `i` so the
/// pair is genuinely isotropic for mixed signs.
pub fn standard_isotropic(space: &QuadraticSpace, spec: &IsotropicSpec) -> Result<IsotropicSubspace> {
    let nz = space.nonzero_indices();
    let kernel = space.kernel_indices();
    let max_pairs = nz.len() / 2;
    let d_max = space.max_isotropic_dim();

    let pair_vector = |j: usize| -> Vector {
        let (a, b) = (nz[2 * j], nz[2 * j + 1]);
        let mut v = linalg::zero_vector(space.dim());
        // q(x·e_a + y·e_b) = d_a x² + d_b y²; choose x, y in {1, i} to kill it.
        v[a] = if space.entry(a) == 1 { Q::one() } else { Q::i() };
        v[b] = if space.entry(b) == 1 { Q::i() } else { Q::one() };
        v
    };

    let build = |pairs: usize, kernel_count: usize| -> Result<IsotropicSubspace> {
        let mut basis = Vec::new();
        for j in 0..pairs {
            basis.push(pair_vector(j));
        }
        for &k in kernel.iter().take(kernel_count) {
            basis.push(linalg::unit_vector(space.dim(), k));
        }
        IsotropicSubspace::new(space.clone(), basis)
    };

    match spec {
        IsotropicSpec::Max => build(max_pairs, kernel.len()),
        IsotropicSpec::Zero => build(0, 0),
        IsotropicSpec::Dim { dim, kernel: with_kernel } => {
            if *dim > d_max {
                return Err(Error::IsotropicDimTooLarge {
                    requested: *dim,
                    max: d_max,
                });
            }
            let kernel_count = if *with_kernel { kernel.len().min(*dim) } else { 0 };
            let pairs = dim - kernel_count;
            if pairs > max_pairs {
                return Err(Error::IsotropicDimTooLarge {
                    requested: *dim,
                    max: max_pairs + kernel_count,
                });
            }
            build(pairs, kernel_count)
        }
        IsotropicSpec::Vectors(vs) => IsotropicSubspace::new(space.clone(), vs.clone()),
    }
}

/// Every isotropic subspace in the standard family, used to sweep test
/// corpora: for each dimension, the with-kernel and without-kernel variants
/// that exist.
pub fn standard_isotropic_family(space: &QuadraticSpace) -> Vec<IsotropicSubspace> {
    let mut out = Vec::new();
    // Proper subspaces only: W = V occurs for the zero form and falls
    // outside the ideal construction.
    let top = space.max_isotropic_dim().min(space.dim().saturating_sub(1));
    for dim in 0..=top {
        for kernel in [false, true] {
            if let Ok(w) = standard_isotropic(space, &IsotropicSpec::Dim { dim, kernel }) {
                if out
                    .iter()
                    .all(|prev: &IsotropicSubspace| prev.row_space() != w.row_space())
                {
                    out.push(w);
                }
            }
        }
    }
    out
}

fn random_small_rational(rng: &mut impl Rng) -> Q {
    let num = rng.gen_range(-3i64..=3);
    let den = rng.gen_range(1i64..=3);
    Q::from_ratio(num, den)
}

fn random_small_gaussian(rng: &mut impl Rng) -> Q {
    let re = random_small_rational(rng);
    let im = random_small_rational(rng);
    &re + &(&Q::i() * &im)
}

/// A random isometry of the space, as a product of exact plane rotations on
/// same-sign coordinate pairs, shears into the kernel, and invertible moves
/// inside the kernel. The result preserves the polar form exactly.
pub fn random_isometry(space: &QuadraticSpace, rng: &mut impl Rng, steps: usize) -> ExactMatrix {
    let n = space.dim();
    let mut t = ExactMatrix::identity(n);
    let nz = space.nonzero_indices();
    let kernel = space.kernel_indices();

    for _ in 0..steps {
        let mut g = ExactMatrix::identity(n);
        let choice = rng.gen_range(0..3);
        match choice {
            // Pythagorean rotation in a plane with equal diagonal entries;
            // c = (1-t²)/(1+t²), s = 2t/(1+t²) with t in Q(i) gives c²+s²=1.
            0 if nz.len() >= 2 => {
                let a = nz[rng.gen_range(0..nz.len())];
                let same: Vec<usize> = nz
                    .iter()
                    .copied()
                    .filter(|&b| b != a && space.entry(b) == space.entry(a))
                    .collect();
                if same.is_empty() {
                    continue;
                }
                let b = same[rng.gen_range(0..same.len())];
                let mut param = random_small_gaussian(rng);
                let one = Q::one();
                // Avoid the pole 1 + t² = 0.
                while (&one + &(&param * &param)).is_zero() {
                    param = random_small_gaussian(rng);
                }
                let denom = (&one + &(&param * &param)).inverse().unwrap();
                let c = &(&one - &(&param * &param)) * &denom;
                let s = &(&Q::from_int(2) * &param) * &denom;
                g.set(a, a, c.clone());
                g.set(b, b, c);
                g.set(a, b, -s.clone());
                g.set(b, a, s);
            }
            // Shear a non-kernel coordinate into the kernel.
            1 if !kernel.is_empty() && !nz.is_empty() => {
                let a = nz[rng.gen_range(0..nz.len())];
                let k = kernel[rng.gen_range(0..kernel.len())];
                g.set(k, a, random_small_gaussian(rng));
            }
            // An invertible move inside the kernel.
            2 if !kernel.is_empty() => {
                let k = kernel[rng.gen_range(0..kernel.len())];
                if kernel.len() > 1 && rng.gen_bool(0.5) {
                    let mut k2 = kernel[rng.gen_range(0..kernel.len())];
                    while k2 == k {
                        k2 = kernel[rng.gen_range(0..kernel.len())];
                    }
                    g.set(k, k2, random_small_gaussian(rng));
                } else {
                    let mut s = random_small_gaussian(rng);
                    while s.is_zero() {
                        s = random_small_gaussian(rng);
                    }
                    g.set(k, k, s);
                }
            }
            _ => continue,
        }
        t = g.mul(&t);
    }
    t
}

/// A random invertible `n × n` matrix with small Gaussian-rational entries.
pub fn random_invertible(n: usize, rng: &mut impl Rng) -> ExactMatrix {
    loop {
        let m = ExactMatrix::from_fn(n, n, |_, _| random_small_gaussian(rng));
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// A random isotropic subspace of the given dimension: a standard one moved
/// by a random isometry, then re-presented in a random basis.
pub fn random_isotropic_subspace(
    space: &QuadraticSpace,
    dim: usize,
    rng: &mut impl Rng,
) -> Result<IsotropicSubspace> {
    let with_kernel = rng.gen_bool(0.5);
    let seed = standard_isotropic(space, &IsotropicSpec::Dim { dim, kernel: with_kernel })
        .or_else(|_| standard_isotropic(space, &IsotropicSpec::Dim { dim, kernel: !with_kernel }))?;
    let iso = random_isometry(space, rng, 6);
    let moved = seed.map_ambient(&iso)?;
    if moved.dim() == 0 {
        return Ok(moved);
    }
    moved.change_basis(&random_invertible(moved.dim(), rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn space(entries: &[i64]) -> QuadraticSpace {
        QuadraticSpace::diagonal_form(entries).unwrap()
    }

    #[test]
    fn diagonal_form_basics() {
        let q = space(&[1, 1, 0]);
        assert_eq!(q.dim(), 3);
        assert_eq!(q.rank(), 2);
        assert_eq!(q.corank(), 1);

        assert!(matches!(
            QuadraticSpace::diagonal_form(&[]),
            Err(Error::EmptyForm)
        ));
        assert!(matches!(
            QuadraticSpace::diagonal_form(&[1, 2, 0]),
            Err(Error::InvalidDiagonalEntry(_))
        ));

        let neg = space(&[-1]);
        assert_eq!(neg.normalized(), space(&[1]));
        assert_eq!(neg.normalized().normalized(), space(&[1]));
    }

    #[test]
    fn orthogonal_sum_cases() {
        let q = space(&[1, 0]);
        let sum = q.add_hyperbolic_plane();
        assert_eq!(sum, space(&[1, 0, 1, 1]));
        assert_eq!(sum.rank(), q.rank() + 2);
        assert_eq!(space(&[1]).orthogonal_sum(&space(&[0])), space(&[1, 0]));
    }

    #[test]
    fn max_isotropic_dims() {
        assert_eq!(space(&[1, 1, 1, 1, 0]).max_isotropic_dim(), 3);
        assert_eq!(space(&[1]).max_isotropic_dim(), 0);
        // <1,0>: formula gives floor(3/2) = 1; cross-check by enumerating
        // isotropic lines: (a, b) with a² = 0 means a = 0, so the kernel line.
        let q = space(&[1, 0]);
        assert_eq!(q.max_isotropic_dim(), 1);
        let w = standard_isotropic(&q, &IsotropicSpec::Max).unwrap();
        assert_eq!(w.dim(), 1);
        assert!(w.contains_kernel());
    }

    #[test]
    fn standard_isotropic_shapes() {
        let q = space(&[1, 1, 0]);
        let w = standard_isotropic(&q, &IsotropicSpec::Max).unwrap();
        assert_eq!(w.dim(), 2);
        // Basis is {v1 + i v2, eps}.
        assert_eq!(w.basis()[0], vec![Q::one(), Q::i(), Q::zero()]);
        assert_eq!(w.basis()[1], vec![Q::zero(), Q::zero(), Q::one()]);

        let z = standard_isotropic(&q, &IsotropicSpec::Zero).unwrap();
        assert_eq!(z.dim(), 0);

        let q5 = space(&[1, 1, 1, 1, 0]);
        let w2 = standard_isotropic(&q5, &IsotropicSpec::Dim { dim: 2, kernel: false }).unwrap();
        assert_eq!(w2.dim(), 2);
        assert_eq!(w2.kernel_intersection().dim(), 0);

        let too_big = standard_isotropic(&q5, &IsotropicSpec::Dim { dim: 4, kernel: true });
        assert!(matches!(too_big, Err(Error::IsotropicDimTooLarge { .. })));

        // Explicit non-isotropic vectors are rejected.
        let bad = standard_isotropic(
            &space(&[1]),
            &IsotropicSpec::Vectors(vec![vec![Q::one()]]),
        );
        assert!(matches!(bad, Err(Error::NotIsotropic(_))));
    }

    #[test]
    fn isotropy_checks() {
        let q2 = space(&[1, 1]);
        let v = vec![Q::one(), Q::i()];
        assert!(q2.is_isotropic(std::slice::from_ref(&v)));
        assert!(!space(&[1]).is_isotropic(&[vec![Q::one()]]));
        let q = space(&[1, 0]);
        assert!(q.is_isotropic(&[vec![Q::zero(), Q::one()]]));
    }

    #[test]
    fn random_isometry_preserves_polar_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for entries in [vec![1, 1, 0], vec![1, 1, 1, 1, 0], vec![1, 1, 1, 0, 0]] {
            let q = space(&entries);
            let t = random_isometry(&q, &mut rng, 8);
            assert!(t.inverse().is_some());
            let n = q.dim();
            for a in 0..n {
                for b in 0..n {
                    let ea = linalg::unit_vector(n, a);
                    let eb = linalg::unit_vector(n, b);
                    assert_eq!(q.polar(&t.apply(&ea), &t.apply(&eb)), q.polar(&ea, &eb));
                }
            }
        }
    }

    #[test]
    fn random_isotropic_subspaces_are_isotropic() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let q = space(&[1, 1, 1, 1, 0]);
        for dim in 0..=q.max_isotropic_dim() {
            for _ in 0..5 {
                let w = random_isotropic_subspace(&q, dim, &mut rng).unwrap();
                assert_eq!(w.dim(), dim);
                // q vanishes on random span elements.
                for _ in 0..4 {
                    let mut v = linalg::zero_vector(q.dim());
                    for b in w.basis() {
                        linalg::add_scaled(&mut v, b, &random_small_gaussian(&mut rng));
                    }
                    assert!(q.q_value(&v).is_zero());
                }
            }
        }
    }

    #[test]
    fn isotropic_spec_parsing() {
        assert_eq!(IsotropicSpec::parse("max").unwrap(), IsotropicSpec::Max);
        assert_eq!(IsotropicSpec::parse("zero").unwrap(), IsotropicSpec::Zero);
        assert_eq!(
            IsotropicSpec::parse("dim=2,kernel=yes").unwrap(),
            IsotropicSpec::Dim { dim: 2, kernel: true }
        );
        let vecs = IsotropicSpec::parse("vecs=1,i,0;0,0,1").unwrap();
        match vecs {
            IsotropicSpec::Vectors(v) => {
                assert_eq!(v.len(), 2);
                assert_eq!(v[0], vec![Q::one(), Q::i(), Q::zero()]);
            }
            _ => panic!("expected vectors"),
        }
        assert!(IsotropicSpec::parse("dim=x").is_err());
        assert!(IsotropicSpec::parse("banana").is_err());
    }

    #[test]
    fn max_isotropic_grows_by_one_under_hyperbolic_sum() {
        for entries in [vec![1], vec![1, 0], vec![1, 1, 0], vec![1, 1, 1, 1, 0]] {
            let q = space(&entries);
            assert_eq!(
                q.add_hyperbolic_plane().max_isotropic_dim(),
                q.max_isotropic_dim() + 1
            );
        }
    }
}
