//! Small exact linear algebra over arbitrary-precision rationals.
//!
//! Everything here exists to make truncation domains *provably* complete:
//! matrix inverses for box bounds, LDL^T pivots for definiteness checks, and
//! exact integer-point enumeration of ellipsoids. Dimensions are tiny (at most
//! rank + a few charge levels), so dense Gaussian elimination is plenty.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Dense symmetric-friendly rational matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    pub n: usize,
    pub a: Vec<Vec<Q>>,
}

impl Mat {
    pub fn zero(n: usize) -> Self {
        Mat {
            n,
            a: vec![vec![Q::zero(); n]; n],
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Q) -> Self {
        Mat {
            n,
            a: (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect(),
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &Q {
        &self.a[i][j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.a[i][j] == self.a[j][i]))
    }

    pub fn mul_vec(&self, x: &[Q]) -> Vec<Q> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| &self.a[i][j] * &x[j]).sum())
            .collect()
    }

    pub fn quad_form(&self, x: &[Q]) -> Q {
        dot(&self.mul_vec(x), x)
    }

    pub fn determinant(&self) -> Q {
        let mut m = self.a.clone();
        let n = self.n;
        let mut det = Q::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return Q::zero();
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            det *= &m[col][col];
            let inv = m[col][col].recip();
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = &m[r][col] * &inv;
                for c in col..n {
                    let s = &f * &m[col][c];
                    m[r][c] -= s;
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse. Returns None for singular input.
    pub fn inverse(&self) -> Option<Mat> {
        let n = self.n;
        let mut m = self.a.clone();
        let mut inv = Mat::from_fn(n, |i, j| if i == j { Q::one() } else { Q::zero() }).a;
        for col in 0..n {
            let p = (col..n).find(|&r| !m[r][col].is_zero())?;
            m.swap(p, col);
            inv.swap(p, col);
            let piv = m[col][col].recip();
            for c in 0..n {
                m[col][c] *= &piv;
                inv[col][c] *= &piv;
            }
            for r in 0..n {
                if r == col || m[r][col].is_zero() {
                    continue;
                }
                let f = m[r][col].clone();
                for c in 0..n {
                    let s = &f * &m[col][c];
                    m[r][c] -= s;
                    let s = &f * &inv[col][c];
                    inv[r][c] -= s;
                }
            }
        }
        Some(Mat { n, a: inv })
    }

    /// Exact test for positive semidefiniteness of a symmetric matrix.
    pub fn is_positive_semidefinite(&self) -> bool {
        debug_assert!(self.is_symmetric());
        let mut m = self.a.clone();
        let n = self.n;
        let mut live: Vec<usize> = (0..n).collect();
        while let Some(&i0) = live.first() {
            let d = m[i0][i0].clone();
            if d.is_negative() {
                return false;
            }
            if d.is_zero() {
                // Zero pivot: the whole row must vanish on the live block.
                if live.iter().any(|&j| !m[i0][j].is_zero()) {
                    return false;
                }
                live.remove(0);
                continue;
            }
            let inv = d.recip();
            let rest: Vec<usize> = live[1..].to_vec();
            for &r in &rest {
                let f = &m[r][i0] * &inv;
                for &c in &rest {
                    let s = &f * &m[i0][c];
                    m[r][c] -= s;
                }
            }
            live.remove(0);
        }
        true
    }

    /// Exact test for positive definiteness (all LDL^T pivots positive).
    pub fn is_positive_definite(&self) -> bool {
        debug_assert!(self.is_symmetric());
        if self.n == 0 {
            return true;
        }
        let mut m = self.a.clone();
        let n = self.n;
        for i in 0..n {
            if !m[i][i].is_positive() {
                return false;
            }
            let inv = m[i][i].recip();
            for r in i + 1..n {
                let f = &m[r][i] * &inv;
                for c in i + 1..n {
                    let s = &f * &m[i][c];
                    m[r][c] -= s;
                }
            }
        }
        true
    }
}

pub fn dot(x: &[Q], y: &[Q]) -> Q {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// All integer points x with (1/2) x^T A x + b^T x <= c, for positive definite A.
///
/// Coordinate-recursive enumeration: at level i the exact minimum of the form
/// over the remaining real coordinates is a convex quadratic in x_i, so the
/// feasible x_i form an interval scanned outward from the real minimizer.
/// Work is proportional to the number of feasible prefixes, not to a bounding
/// box. Returns points in lexicographic order.
pub fn ellipsoid_points(a: &Mat, b: &[Q], c: &Q) -> Vec<Vec<i64>> {
    let n = a.n;
    if n == 0 {
        // Constant form: the single empty point iff 0 <= c.
        return if !c.is_negative() { vec![vec![]] } else { vec![] };
    }
    // Suffix inverses: inv[i] = inverse of A[i+1.., i+1..] (None for i = n-1).
    let suffix_inv: Vec<Option<Mat>> = (0..n)
        .map(|i| {
            let m = n - i - 1;
            if m == 0 {
                None
            } else {
                Some(
                    Mat::from_fn(m, |r, s| a.at(i + 1 + r, i + 1 + s).clone())
                        .inverse()
                        .expect("positive definite matrix must be invertible"),
                )
            }
        })
        .collect();
    // Schur complements s_i = a_ii - col_i^T inv_i col_i > 0 (leading
    // coefficient of the level-i envelope quadratic).
    let schur: Vec<Q> = (0..n)
        .map(|i| {
            let mut s = a.at(i, i).clone();
            if let Some(inv) = &suffix_inv[i] {
                let col: Vec<Q> = (i + 1..n).map(|r| a.at(r, i).clone()).collect();
                s -= dot(&inv.mul_vec(&col), &col);
            }
            s
        })
        .collect();

    struct Ctx<'a> {
        a: &'a Mat,
        n: usize,
        suffix_inv: &'a [Option<Mat>],
        schur: &'a [Q],
        out: Vec<Vec<i64>>,
    }

    // Envelope h(t) = (1/2) a_ii t^2 + b_i t + min over the real suffix of the
    // remaining form with linear term (b_suffix + col * t).
    fn envelope(ctx: &Ctx, i: usize, b_cur: &[Q], t: &Q) -> Q {
        let mut h = ctx.a.at(i, i) * t * t / qi(2) + &b_cur[0] * t;
        if let Some(inv) = &ctx.suffix_inv[i] {
            let lin: Vec<Q> = (1..b_cur.len())
                .map(|r| &b_cur[r] + ctx.a.at(i + r, i) * t)
                .collect();
            h -= dot(&inv.mul_vec(&lin), &lin) / qi(2);
        }
        h
    }

    fn rec(ctx: &mut Ctx, i: usize, prefix: &mut Vec<i64>, b_cur: Vec<Q>, c_cur: Q) {
        if i == ctx.n {
            if !c_cur.is_negative() {
                ctx.out.push(prefix.clone());
            }
            return;
        }
        // Real minimizer of the envelope: h'(t) = s t + u = 0 with
        // u = b_i - col^T inv (b_suffix).
        let mut u = b_cur[0].clone();
        if let Some(inv) = &ctx.suffix_inv[i] {
            let col: Vec<Q> = (1..b_cur.len()).map(|r| ctx.a.at(i + r, i).clone()).collect();
            let tail: Vec<Q> = b_cur[1..].to_vec();
            u -= dot(&inv.mul_vec(&tail), &col);
        }
        let tstar = -(u / &ctx.schur[i]);
        let t0 = tstar.floor().to_integer();
        // The envelope is convex with real minimizer in [t0, t0+1), so it is
        // monotone on [t0+1, inf) upward and on (-inf, t0] downward; each scan
        // stops at the first infeasible integer.
        let mut feasible: Vec<BigInt> = Vec::new();
        let mut t: BigInt = &t0 + 1;
        loop {
            let tq = Q::from_integer(t.clone());
            if envelope(ctx, i, &b_cur, &tq) <= c_cur {
                feasible.push(t.clone());
                t += 1;
            } else {
                break;
            }
        }
        let mut t = t0.clone();
        loop {
            let tq = Q::from_integer(t.clone());
            if envelope(ctx, i, &b_cur, &tq) <= c_cur {
                feasible.push(t.clone());
                t -= 1;
            } else {
                break;
            }
        }
        feasible.sort();
        for t in feasible {
            let tq = Q::from_integer(t.clone());
            let spent = ctx.a.at(i, i) * &tq * &tq / qi(2) + &b_cur[0] * &tq;
            let b_next: Vec<Q> = (1..b_cur.len())
                .map(|r| &b_cur[r] + ctx.a.at(i + r, i) * &tq)
                .collect();
            prefix.push(i64::try_from(&t).expect("ellipsoid point fits i64"));
            rec(ctx, i + 1, prefix, b_next, &c_cur - spent);
            prefix.pop();
        }
    }

    let mut ctx = Ctx {
        a,
        n,
        suffix_inv: &suffix_inv,
        schur: &schur,
        out: Vec::new(),
    };
    let mut prefix = Vec::new();
    rec(&mut ctx, 0, &mut prefix, b.to_vec(), c.clone());
    ctx.out
}

/// Minimum over real x of (1/2) x^T A x + b^T x, for positive definite A.
pub fn quadratic_minimum(a: &Mat, b: &[Q]) -> Q {
    if a.n == 0 {
        return Q::zero();
    }
    let ainv = a.inverse().expect("positive definite");
    let neg_b: Vec<Q> = b.iter().map(|v| -v).collect();
    let xstar = ainv.mul_vec(&neg_b);
    a.quad_form(&xstar) / qi(2) + dot(b, &xstar)
}
