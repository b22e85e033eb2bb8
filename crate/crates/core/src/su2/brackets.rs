//! Symplectic brackets on SL(2,C) in the entries `a, b, c, d`.
//!
//! The printed table gives every holomorphic pair `{v, w}` and the mixed
//! pairs `{conj(v), w}` with `v` after `w` in the order `a, b, c, d`, plus the
//! diagonal `{conj(v), v}`. The remaining mixed pairs are forced by reality of
//! the bracket: `{conj(v), w} = -conj({conj(w), v})`. No pair is left
//! undetermined. The realified bivector built from the completed table
//! satisfies Jacobi identically on R^8, and its hamiltonian vector field for
//! `H = tr(A^† A)/2` equals `i eps (H A + Y conj(A) Y)` up to a term
//! proportional to `det A - 1`.

use num_complex::Complex64;

use super::mat2::{Mat2, I};
use crate::poisson::BivectorSpec;

/// Entry labels in storage order.
pub const ENTRY_NAMES: [&str; 4] = ["a", "b", "c", "d"];

/// Real chart of SL(2,C) as a subset of C^4.
pub const REAL_NAMES: [&str; 8] = ["re_a", "im_a", "re_b", "im_b", "re_c", "im_c", "re_d", "im_d"];

/// All brackets between the entries of `A` and their conjugates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SL2CBracketTable {
    /// `holomorphic[v][w] = {v, w}`
    pub holomorphic: [[Complex64; 4]; 4],
    /// `mixed[v][w] = {conj(v), w}`
    pub mixed: [[Complex64; 4]; 4],
}

impl SL2CBracketTable {
    /// `{conj(v), conj(w)} = conj({v, w})`
    pub fn antiholomorphic(&self, v: usize, w: usize) -> Complex64 {
        self.holomorphic[v][w].conj()
    }

    /// `{v, conj(w)} = -{conj(w), v}`
    pub fn mixed_reversed(&self, v: usize, w: usize) -> Complex64 {
        -self.mixed[w][v]
    }
}

/// Evaluates the bracket table at `A`.
pub fn sl2c_bracket_table(m: &Mat2, eps: f64) -> SL2CBracketTable {
    let ie = I * eps;
    let [a, b, c, d] = m.entries();
    let zero = Complex64::new(0.0, 0.0);

    let mut hol = [[zero; 4]; 4];
    let listed_hol = [
        ((0, 1), -ie * a * b),
        ((0, 2), ie * a * c),
        ((0, 3), zero),
        ((1, 2), ie * 2.0 * a * d),
        ((1, 3), ie * b * d),
        ((2, 3), -ie * c * d),
    ];
    for ((v, w), val) in listed_hol {
        hol[v][w] = val;
        hol[w][v] = -val;
    }

    let mut mixed = [[zero; 4]; 4];
    mixed[0][0] = ie * (a.norm_sqr() + 2.0 * c.norm_sqr());
    mixed[1][1] = ie * (b.norm_sqr() + 2.0 * a.norm_sqr() + 2.0 * d.norm_sqr());
    mixed[2][2] = ie * c.norm_sqr();
    mixed[3][3] = ie * (d.norm_sqr() + 2.0 * c.norm_sqr());
    let listed_mixed = [
        ((1, 0), ie * 2.0 * c * d.conj()),
        ((2, 0), zero),
        ((3, 0), -ie * a * d.conj()),
        ((2, 1), -ie * b * c.conj()),
        ((3, 1), ie * 2.0 * a * c.conj()),
        ((3, 2), zero),
    ];
    for ((v, w), val) in listed_mixed {
        mixed[v][w] = val;
        mixed[w][v] = -val.conj();
    }
    SL2CBracketTable { holomorphic: hol, mixed }
}

/// Brackets of the real coordinates `(re v, im v)` in packed upper form.
fn realify(t: &SL2CBracketTable) -> Vec<f64> {
    let mut full = [[0.0; 8]; 8];
    for v in 0..4 {
        let (i, ii) = (2 * v, 2 * v + 1);
        // {re v, im v} = {conj(v), v} / 2i
        let diag = (t.mixed[v][v] / (2.0 * I)).re;
        full[i][ii] = diag;
        full[ii][i] = -diag;
        for w in v + 1..4 {
            let (j, jj) = (2 * w, 2 * w + 1);
            let h = t.holomorphic[v][w];
            let m = t.mixed[v][w];
            let vals = [
                (i, j, 0.5 * (h + m).re),
                (ii, jj, 0.5 * (m - h).re),
                (i, jj, 0.5 * (h + m).im),
                (ii, j, 0.5 * (h - m).im),
            ];
            for (p, q, val) in vals {
                full[p][q] = val;
                full[q][p] = -val;
            }
        }
    }
    let mut packed = Vec::with_capacity(28);
    for i in 0..8 {
        for j in i + 1..8 {
            packed.push(full[i][j]);
        }
    }
    packed
}

/// The bracket table as a bivector on the eight real coordinates.
pub fn sl2c_bivector(eps: f64) -> BivectorSpec {
    BivectorSpec::from_packed(REAL_NAMES, move |x| realify(&sl2c_bracket_table(&Mat2::from_real(x), eps)))
        .expect("static chart")
}
