use group_core::Elem;

use crate::irreps::IrrepTable;
use crate::matrix::C64;

/// Worst residual of each identity a complete irrep table must satisfy.
#[derive(Debug, Clone, PartialEq)]
pub struct TableReport {
    /// `max_g |(1/|G|) sum_rho d_rho chi_rho(g) - delta_{g,1}|`
    pub regular_character: f64,
    /// `| |G| - sum_rho d_rho^2 |`
    pub dimension_sum: f64,
    /// Schur orthogonality of matrix-coefficient columns.
    pub schur: f64,
    pub homomorphism: f64,
    pub unitarity: f64,
}

impl TableReport {
    pub fn max(&self) -> f64 {
        [self.regular_character, self.dimension_sum, self.schur, self.homomorphism, self.unitarity]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

pub fn validate_table(t: &IrrepTable) -> TableReport {
    let g = &t.group;
    let n = g.order();
    let nf = n as f64;

    let regular_character = g
        .elements_iter()
        .map(|x| {
            let s: C64 = t.irreps.iter().map(|r| r.character(x) * r.dim as f64).sum::<C64>() / nf;
            let target = if x == 0 { 1.0 } else { 0.0 };
            (s - target).norm()
        })
        .fold(0.0, f64::max);

    let dimension_sum = (nf - t.dims_squared() as f64).abs();

    // sum_g rho_ij(g) conj(sigma_kl(g)) = |G|/d_rho [rho = sigma, i = k, j = l]
    let coeffs: Vec<(usize, usize, usize)> = t
        .irreps
        .iter()
        .enumerate()
        .flat_map(|(r, rep)| (0..rep.dim).flat_map(move |i| (0..rep.dim).map(move |j| (r, i, j))))
        .collect();
    // Split real/imaginary columns; the Gram matrix is Hermitian, so a <= b suffices.
    let re: Vec<Vec<f64>> =
        coeffs.iter().map(|&(r, i, j)| t.irreps[r].matrices.iter().map(|m| m[(i, j)].re).collect()).collect();
    let im: Vec<Vec<f64>> =
        coeffs.iter().map(|&(r, i, j)| t.irreps[r].matrices.iter().map(|m| m[(i, j)].im).collect()).collect();
    let mut schur = 0.0f64;
    for a in 0..coeffs.len() {
        for b in a..coeffs.len() {
            let s = dot_conj(&re[b], &im[b], &re[a], &im[a]);
            let target = if a == b { nf / t.irreps[coeffs[a].0].dim as f64 } else { 0.0 };
            schur = schur.max((s - target).norm());
        }
    }

    let table: Vec<Elem> = g.elements_iter().flat_map(|x| g.elements_iter().map(move |y| g.mul(x, y))).collect();
    let mut homomorphism = 0.0f64;
    let mut unitarity = 0.0f64;
    for rep in &t.irreps {
        let d = rep.dim;
        let dd = d * d;
        let flat: Vec<C64> = rep.matrices.iter().flat_map(|m| m.data().iter().copied()).collect();
        for x in g.elements_iter() {
            unitarity = unitarity.max(rep.matrices[x].unitarity_residual());
            let row = &table[x * n..(x + 1) * n];
            let mx = &flat[x * dd..(x + 1) * dd];
            if d == 1 {
                let z = mx[0];
                for (y, &xy) in row.iter().enumerate() {
                    homomorphism = homomorphism.max((z * flat[y] - flat[xy]).norm_sqr());
                }
                continue;
            }
            for (y, &xy) in row.iter().enumerate() {
                let (my, mxy) = (&flat[y * dd..(y + 1) * dd], &flat[xy * dd..(xy + 1) * dd]);
                for i in 0..d {
                    for j in 0..d {
                        let p: C64 = (0..d).map(|k| mx[i * d + k] * my[k * d + j]).sum();
                        homomorphism = homomorphism.max((p - mxy[i * d + j]).norm_sqr());
                    }
                }
            }
        }
    }
    let homomorphism = homomorphism.sqrt();

    TableReport { regular_character, dimension_sum, schur, homomorphism, unitarity }
}

/// `sum a conj(b)` in four independent lanes so the loop vectorizes.
fn dot_conj(ar: &[f64], ai: &[f64], br: &[f64], bi: &[f64]) -> C64 {
    let mut sr = [0.0; 4];
    let mut si = [0.0; 4];
    let n = ar.len() / 4 * 4;
    for k in (0..n).step_by(4) {
        for l in 0..4 {
            sr[l] += ar[k + l] * br[k + l] + ai[k + l] * bi[k + l];
            si[l] += ai[k + l] * br[k + l] - ar[k + l] * bi[k + l];
        }
    }
    let (mut r, mut i) = (sr.iter().sum::<f64>(), si.iter().sum::<f64>());
    for k in n..ar.len() {
        r += ar[k] * br[k] + ai[k] * bi[k];
        i += ai[k] * br[k] - ar[k] * bi[k];
    }
    C64::new(r, i)
}
