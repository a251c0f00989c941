use std::f64::consts::PI;

use group_core::{Elem, GroupKind, GroupSpec, HspError, Result, Subgroup, DEFAULT_CAP};

use crate::matrix::{cis, root_of_unity, Mat, C64};

/// Matrix tolerance used for identities such as `rho(g) = I`.
pub const MAT_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct Representation {
    pub label: String,
    pub dim: usize,
    /// One matrix per group element, indexed by element.
    pub matrices: Vec<Mat>,
}

impl Representation {
    pub fn new(label: impl Into<String>, dim: usize, matrices: Vec<Mat>) -> Self {
        Representation { label: label.into(), dim, matrices }
    }

    pub fn at(&self, g: Elem) -> &Mat {
        &self.matrices[g]
    }

    pub fn character(&self, g: Elem) -> C64 {
        self.matrices[g].trace()
    }

    /// `sum_{h in H} rho(h)`, unnormalized.
    pub fn sum_over(&self, elems: &[Elem]) -> Mat {
        let mut acc = Mat::zeros(self.dim, self.dim);
        for &h in elems {
            acc = acc.add(&self.matrices[h]);
        }
        acc
    }
}

#[derive(Debug, Clone)]
pub struct IrrepTable {
    pub group: GroupSpec,
    pub irreps: Vec<Representation>,
}

/// One basis vector `|rho, i, j>` of the Fourier domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel {
    pub rho: usize,
    pub i: usize,
    pub j: usize,
}

impl IrrepTable {
    /// Flat offset of each irrep block; blocks are row-major `d x d`.
    pub fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.irreps.len());
        let mut acc = 0;
        for r in &self.irreps {
            off.push(acc);
            acc += r.dim * r.dim;
        }
        off
    }

    pub fn flat_index(&self, l: BasisLabel) -> usize {
        self.offsets()[l.rho] + l.i * self.irreps[l.rho].dim + l.j
    }

    /// All `(rho, i, j)` labels in flat order.
    pub fn basis_labels(&self) -> Vec<BasisLabel> {
        let mut out = Vec::new();
        for (rho, r) in self.irreps.iter().enumerate() {
            for i in 0..r.dim {
                for j in 0..r.dim {
                    out.push(BasisLabel { rho, i, j });
                }
            }
        }
        out
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.irreps.iter().position(|r| r.label == label)
    }

    pub fn dims_squared(&self) -> usize {
        self.irreps.iter().map(|r| r.dim * r.dim).sum()
    }
}

fn require_enumerable(g: &GroupSpec) -> Result<()> {
    if g.order() > DEFAULT_CAP {
        return Err(HspError::Capacity { what: g.to_string(), size: g.order(), cap: DEFAULT_CAP });
    }
    Ok(())
}

/// Characters `chi_g(g') = prod_i exp(2 pi i g_i g'_i / t_i)`, irrep `g` at position `g`.
pub fn abelian_irreps(g: &GroupSpec) -> Result<IrrepTable> {
    let ts = g
        .cyclic_factors()
        .ok_or_else(|| HspError::Precondition(format!("{g} is not a product of cyclic groups")))?;
    require_enumerable(g)?;
    let coords: Vec<Vec<usize>> = g.elements_iter().map(|x| g.coords(x)).collect();
    let irreps = coords
        .iter()
        .map(|cg| {
            let matrices = coords
                .iter()
                .map(|ch| {
                    let phase: f64 = ts
                        .iter()
                        .enumerate()
                        .map(|(i, &t)| ((cg[i] * ch[i]) % t) as f64 / t as f64)
                        .sum();
                    Mat::scalar(cis(2.0 * PI * phase))
                })
                .collect();
            let label = format!("chi{cg:?}").replace(' ', "");
            Representation::new(label, 1, matrices)
        })
        .collect();
    Ok(IrrepTable { group: g.clone(), irreps })
}

/// Number of two-dimensional irreps of `D_N`, i.e. `#{k : 0 < k < N/2}`.
pub fn num_tau(n: usize) -> usize {
    (n - 1) / 2
}

/// `tau^k(a,0) = diag(w^{-ka}, w^{ka})`, `tau^k(a,1) = antidiag(w^{-ka}, w^{ka})`.
pub fn tau_matrix(n: usize, k: usize, a: usize, b: usize) -> Mat {
    let z = C64::new(0.0, 0.0);
    let lo = root_of_unity(n, -((k * a) as i64));
    let hi = root_of_unity(n, (k * a) as i64);
    if b == 0 {
        Mat::from_rows(vec![vec![lo, z], vec![z, hi]])
    } else {
        Mat::from_rows(vec![vec![z, lo], vec![hi, z]])
    }
}

/// Canonical table: `psi0, psi1, (psi2, psi3 when N is even), tau1, tau2, ...`.
pub fn dihedral_irreps(n: usize) -> IrrepTable {
    assert!(n >= 1);
    let g = GroupSpec::dihedral(n);
    let one = |f: &dyn Fn(usize, usize) -> f64| -> Vec<Mat> {
        g.elements_iter().map(|x| Mat::scalar(C64::new(f(x % n, x / n), 0.0))).collect()
    };
    let sign = |e: usize| if e % 2 == 0 { 1.0 } else { -1.0 };
    let mut irreps = vec![
        Representation::new("psi0", 1, one(&|_, _| 1.0)),
        Representation::new("psi1", 1, one(&|_, b| sign(b))),
    ];
    if n % 2 == 0 {
        irreps.push(Representation::new("psi2", 1, one(&|a, _| sign(a))));
        irreps.push(Representation::new("psi3", 1, one(&|a, b| sign(a + b))));
    }
    for k in 1..=num_tau(n) {
        let m = g.elements_iter().map(|x| tau_matrix(n, k, x % n, x / n)).collect();
        irreps.push(Representation::new(format!("tau{k}"), 2, m));
    }
    IrrepTable { group: g, irreps }
}

/// Position of `tau^k` in the canonical dihedral table.
pub fn tau_index(n: usize, k: usize) -> usize {
    let ones = if n % 2 == 0 { 4 } else { 2 };
    ones + k - 1
}

/// `e^{i gamma} [[cos t, sin t e^{i a}], [sin t e^{i b}, -cos t e^{i(a+b)}]]`.
pub fn unitary2(theta: f64, alpha: f64, beta: f64, gamma: f64) -> Mat {
    let (s, c) = theta.sin_cos();
    let g = cis(gamma);
    Mat::from_rows(vec![
        vec![g * c, g * s * cis(alpha)],
        vec![g * s * cis(beta), -g * c * cis(alpha + beta)],
    ])
}

/// Recovers `(theta, alpha, beta, gamma)` with `unitary2(..) = w` for a 2x2 unitary `w`.
pub fn fit_unitary2(w: &Mat) -> (f64, f64, f64, f64) {
    let theta = w[(0, 1)].norm().atan2(w[(0, 0)].norm());
    let gamma = if w[(0, 0)].norm() > 1e-12 { w[(0, 0)].arg() } else { w[(0, 1)].arg() };
    let alpha = if w[(0, 1)].norm() > 1e-12 { w[(0, 1)].arg() - gamma } else { (-w[(1, 1)]).arg() - gamma };
    let beta = if w[(1, 0)].norm() > 1e-12 { w[(1, 0)].arg() - gamma } else { 0.0 };
    // with sin(theta) = 0 the (1,1) entry pins alpha + beta only
    let alpha = if w[(0, 1)].norm() > 1e-12 { alpha } else { (-w[(1, 1)]).arg() - gamma - beta };
    (theta, alpha, beta, gamma)
}

/// `rho'(g) = U rho(g) U^dagger`.
pub fn change_basis(rep: &Representation, u: &Mat) -> Result<Representation> {
    if u.rows() != rep.dim || !u.is_unitary(MAT_TOL) {
        return Err(HspError::Precondition("change of basis needs a unitary of matching size".into()));
    }
    let ud = u.adjoint();
    let matrices = rep.matrices.iter().map(|m| &(u * m) * &ud).collect();
    Ok(Representation::new(rep.label.clone(), rep.dim, matrices))
}

/// Conjugates a representation into unitary form using the group-averaged inner product
/// `<a, b>_G = sum_g <rho(g) a, rho(g) b>` and Gram-Schmidt on the standard basis.
pub fn unitarize(rep: &Representation) -> Result<Representation> {
    let d = rep.dim;
    for m in &rep.matrices {
        if m.inverse().is_none() {
            return Err(HspError::Precondition("representation has a singular matrix".into()));
        }
    }
    let mut gram = Mat::zeros(d, d);
    for m in &rep.matrices {
        gram = gram.add(&(&m.adjoint() * m));
    }
    let inner = |a: &[C64], b: &[C64]| -> C64 {
        let pb = gram.mul_vec(b);
        a.iter().zip(&pb).map(|(x, y)| x.conj() * y).sum()
    };
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(d);
    for col in 0..d {
        let mut v = vec![C64::new(0.0, 0.0); d];
        v[col] = C64::new(1.0, 0.0);
        for f in &basis {
            let c = inner(f, &v);
            for (x, y) in v.iter_mut().zip(f) {
                *x -= c * y;
            }
        }
        let nrm = inner(&v, &v).re.sqrt();
        basis.push(v.into_iter().map(|x| x / nrm).collect());
    }
    let mut b = Mat::zeros(d, d);
    for (j, f) in basis.iter().enumerate() {
        for i in 0..d {
            b[(i, j)] = f[i];
        }
    }
    let bi = b.inverse().ok_or_else(|| HspError::Invariant("orthonormal basis is singular".into()))?;
    let matrices = rep.matrices.iter().map(|m| &(&bi * m) * &b).collect();
    Ok(Representation::new(rep.label.clone(), d, matrices))
}

/// `{g : rho(g) = I}`.
pub fn rep_kernel(g: &GroupSpec, rep: &Representation) -> Result<Subgroup> {
    require_enumerable(g)?;
    let id = Mat::identity(rep.dim);
    let elems: Vec<Elem> =
        g.elements_iter().filter(|&x| rep.matrices[x].max_diff(&id) < MAT_TOL).collect();
    Subgroup::from_elements(g, elems)
}

/// The dihedral table with every `tau^k` conjugated by `U_k` of `basis`.
pub fn dihedral_irreps_in_basis(n: usize, basis: &crate::basis::DihedralBasis) -> Result<IrrepTable> {
    let mut t = dihedral_irreps(n);
    for k in 1..=num_tau(n) {
        let idx = tau_index(n, k);
        t.irreps[idx] = change_basis(&t.irreps[idx], &basis.u(k))?;
    }
    Ok(t)
}

/// Irrep table for any group that has one in this crate.
pub fn irreps_for(g: &GroupSpec) -> Result<IrrepTable> {
    match g.kind() {
        GroupKind::Dihedral(n) => Ok(dihedral_irreps(*n)),
        _ if g.cyclic_factors().is_some() => abelian_irreps(g),
        _ => Err(HspError::Precondition(format!("no irrep table available for {g}"))),
    }
}
