//! Cotangent lift of a frame and construction of the reduced Jacobi curve
//! as a jet of symmetric 2×2 matrices.
//!
//! Points of `T*ℝ⁵` have coordinates `(x1..x5, p1..p5)`.  The characteristic
//! curve through `λ0` is the integral curve of the Hamiltonian field of
//! `G = u4 u2 − u5 u1`, which restricts to `h` on `(D²)^⊥`.  Vectors along the
//! curve are transported back to `λ0` with the inverse of the linearised flow
//! `Φ' = KΦ`, where `K` is the Jacobian of the Hamiltonian field.

use num::{One, Zero};

use super::OracleError;
use crate::algebra::linalg::{inverse, nullspace, rank, solve_general, Matrix};
use crate::algebra::{Jet, Rational, RationalFunction};
use crate::diffgeo::{dual_coframe, exterior_derivative, Frame, DIM};

/// Dimension of the cotangent bundle.
const TDIM: usize = 2 * DIM;
/// Dimension of the chart `(x1..x5, u4, u5)` of `(D²)^⊥`.
const CDIM: usize = DIM + 2;

fn zero_r() -> Rational {
    Rational::zero()
}

/// Rational-function data of the cotangent lift (functions of 10 variables).
#[derive(Clone, Debug)]
pub struct CotangentLift {
    /// Hamiltonian field of `G`: `(∂G/∂p, −∂G/∂x)`.
    gvec: Vec<RationalFunction>,
    /// Jacobian of `gvec`.
    jac: Vec<Vec<RationalFunction>>,
    /// `xf[k][a] = X_k^a`.
    xf: Vec<Vec<RationalFunction>>,
    /// `om[i][a] = ω^i_a`.
    om: Vec<Vec<RationalFunction>>,
    /// `dx[j][a][b] = ∂_b X_j^a`.
    dx: Vec<Vec<Vec<RationalFunction>>>,
    /// Base-variable frame and coframe, kept for the σ self-test.
    frame: Frame,
}

impl CotangentLift {
    /// Prepare the lift of a frame.
    pub fn new(frame: &Frame) -> Result<Self, OracleError> {
        let co = dual_coframe(frame)?;
        let ext = |f: &RationalFunction| f.extend_vars(TDIM);
        let xf: Vec<Vec<RationalFunction>> = (0..DIM).map(|k| frame.x[k].c.iter().map(ext).collect()).collect();
        let om: Vec<Vec<RationalFunction>> = (0..DIM).map(|i| co.w[i].c.iter().map(ext).collect()).collect();
        let dx = (0..DIM).map(|j| (0..DIM).map(|a| (0..DIM).map(|b| ext(&frame.x[j].c[a].derivative(b))).collect()).collect()).collect();
        let p = |a: usize| RationalFunction::var(TDIM, DIM + a);
        let u: Vec<RationalFunction> = (0..DIM).map(|i| (0..DIM).fold(RationalFunction::zero(TDIM), |acc, a| &acc + &(&p(a) * &xf[i][a]))).collect();
        let g = &(&u[3] * &u[1]) - &(&u[4] * &u[0]);
        let mut gvec: Vec<RationalFunction> = (0..DIM).map(|a| g.derivative(DIM + a)).collect();
        gvec.extend((0..DIM).map(|a| -g.derivative(a)));
        let jac = gvec.iter().map(|f| (0..TDIM).map(|v| f.derivative(v)).collect()).collect();
        Ok(CotangentLift { gvec, jac, xf, om, dx, frame: frame.clone() })
    }
}

fn eval_jet(f: &RationalFunction, env: &[Jet]) -> Result<Jet, OracleError> {
    if f.is_zero() {
        return Ok(Jet::zero(env[0].order()));
    }
    f.eval_in(env).map_err(|_| OracleError::Pole)
}

fn eval_rat(f: &RationalFunction, pt: &[Rational]) -> Result<Rational, OracleError> {
    f.eval(pt).map_err(|_| OracleError::Pole)
}

/// The symplectic quotient `W_{λ0}` with a chosen basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedSpace {
    /// Base point `q0`.
    pub q0: Vec<Rational>,
    /// Fiber point `(u4, u5)`.
    pub u: (Rational, Rational),
    /// Covector `p0 = u4 ω⁴(q0) + u5 ω⁵(q0)`.
    pub p0: Vec<Rational>,
    /// Characteristic direction `h(λ0)` in the chart `(δx, δu4, δu5)`.
    pub h0: Vec<Rational>,
    /// Euler direction in the chart.
    pub e0: Vec<Rational>,
    /// Four chart vectors representing a basis of `W_{λ0}`.
    pub basis: Vec<Vec<Rational>>,
    /// Gram matrix of `σ` on the basis (skew, invertible).
    pub gram: Matrix<Rational>,
}

impl ReducedSpace {
    /// `σ̄(x, y)` for coordinate vectors on the basis.
    pub fn sbar(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut acc = zero_r();
        for i in 0..4 {
            for j in 0..4 {
                if !self.gram[i][j].is_zero() {
                    acc += &x[i] * &self.gram[i][j] * &y[j];
                }
            }
        }
        acc
    }
}

/// Result of the σ convention self-test at `λ0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaSelfTest {
    /// `σ(u⃗_i, V) = du_i(V)` for all `i` and all coordinate vectors `V`.
    pub hamiltonian: bool,
    /// `σ = −Σ(du_i ∧ ω^i + u_i dω^i)` on all pairs of coordinate vectors.
    pub frame_expression: bool,
}

/// The reduced Jacobi curve in the chart `Λ(t) = {(x, S_t x)}`.
#[derive(Clone, Debug)]
pub struct CurveChart {
    /// `S_t` (symmetric, `S_0 = 0`).
    pub s: [[Jet; 2]; 2],
    /// The reduced space used.
    pub space: ReducedSpace,
    /// σ self-test outcome.
    pub self_test: SigmaSelfTest,
}

/// Values of the lift data at `λ0`.
struct AtPoint {
    x0: Vec<Vec<Rational>>,
    om0: Vec<Vec<Rational>>,
    dx0: Vec<Vec<Vec<Rational>>>,
    p0: Vec<Rational>,
}

impl AtPoint {
    /// `du_j(V)` for a 10-vector `V`.
    fn du(&self, j: usize, v: &[Rational]) -> Rational {
        let mut acc = zero_r();
        for a in 0..DIM {
            acc += &v[DIM + a] * &self.x0[j][a];
            for b in 0..DIM {
                if !self.dx0[j][a][b].is_zero() {
                    acc += &self.p0[a] * &self.dx0[j][a][b] * &v[b];
                }
            }
        }
        acc
    }

    /// Chart vector `(δx, δu4, δu5)` to a tangent vector of `T*ℝ⁵` on `(D²)^⊥`.
    fn to_canon(&self, v: &[Rational]) -> Vec<Rational> {
        let dq = &v[..DIM];
        let mut out = dq.to_vec();
        let mut corr = [zero_r(), zero_r(), zero_r(), zero_r(), zero_r()];
        for (j, cj) in corr.iter_mut().enumerate() {
            for b in 0..DIM {
                for c in 0..DIM {
                    if !self.dx0[j][c][b].is_zero() {
                        *cj += &self.p0[c] * &self.dx0[j][c][b] * &dq[b];
                    }
                }
            }
        }
        for a in 0..DIM {
            let mut dp = &v[DIM] * &self.om0[3][a] + &v[DIM + 1] * &self.om0[4][a];
            for j in 0..DIM {
                dp -= &corr[j] * &self.om0[j][a];
            }
            out.push(dp);
        }
        out
    }

    /// `σ(V, W) = Σ (V_q W_p − V_p W_q)` on chart vectors.
    fn sig(&self, v: &[Rational], w: &[Rational]) -> Rational {
        sig10(&self.to_canon(v), &self.to_canon(w))
    }
}

fn sig10(v: &[Rational], w: &[Rational]) -> Rational {
    let mut acc = zero_r();
    for a in 0..DIM {
        acc += &v[a] * &w[DIM + a] - &v[DIM + a] * &w[a];
    }
    acc
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    (0..n).map(|k| if k == i { Rational::one() } else { zero_r() }).collect()
}

/// Build `S_t` to order `order` for the frame at `(q0; u4, u5)`.
pub fn curve_jets(lift: &CotangentLift, q0: &[Rational], u4: &Rational, u5: &Rational, order: usize) -> Result<CurveChart, OracleError> {
    if u4.is_zero() && u5.is_zero() {
        return Err(OracleError::ZeroCovector);
    }
    let n = order;
    // --- initial point -------------------------------------------------
    let pt0: Vec<Rational> = q0.iter().cloned().chain((0..DIM).map(|_| zero_r())).collect();
    let om0: Vec<Vec<Rational>> = lift.om.iter().map(|row| row.iter().map(|f| eval_rat(f, &pt0)).collect::<Result<_, _>>()).collect::<Result<_, _>>()?;
    let p0: Vec<Rational> = (0..DIM).map(|a| u4 * &om0[3][a] + u5 * &om0[4][a]).collect();
    let lam0: Vec<Rational> = q0.iter().cloned().chain(p0.iter().cloned()).collect();
    let x0: Vec<Vec<Rational>> = lift.xf.iter().map(|row| row.iter().map(|f| eval_rat(f, &lam0)).collect::<Result<_, _>>()).collect::<Result<_, _>>()?;
    let dx0: Vec<Vec<Vec<Rational>>> = lift
        .dx
        .iter()
        .map(|m| m.iter().map(|row| row.iter().map(|f| eval_rat(f, &lam0)).collect::<Result<_, _>>()).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;
    let at = AtPoint { x0, om0, dx0, p0: p0.clone() };

    // --- flow γ(t) -------------------------------------------------------
    let mut coeffs: Vec<Vec<Rational>> = lam0.iter().map(|v| vec![v.clone()]).collect();
    for k in 0..n {
        let gam: Vec<Jet> = coeffs.iter().map(|c| Jet::from_coeffs(c.clone(), n)).collect();
        for (i, f) in lift.gvec.iter().enumerate() {
            let v = eval_jet(f, &gam)?;
            let next = v.coeff(k) / Rational::from_integer((k as i64 + 1).into());
            coeffs[i].push(next);
        }
    }
    let gam: Vec<Jet> = coeffs.iter().map(|c| Jet::from_coeffs(c.clone(), n)).collect();

    // --- linearised flow Φ' = KΦ ----------------------------------------
    let kmat: Vec<Vec<Jet>> = lift.jac.iter().map(|row| row.iter().map(|f| eval_jet(f, &gam)).collect::<Result<_, _>>()).collect::<Result<_, _>>()?;
    let mut phi: Vec<Vec<Vec<Rational>>> = (0..TDIM).map(|i| (0..TDIM).map(|j| vec![if i == j { Rational::one() } else { zero_r() }]).collect()).collect();
    for k in 0..n {
        let mut next = vec![vec![zero_r(); TDIM]; TDIM];
        for (i, row) in next.iter_mut().enumerate() {
            for m in 0..TDIM {
                let kc = kmat[i][m].coeffs();
                for l in 0..=k {
                    if kc[l].is_zero() {
                        continue;
                    }
                    for (j, slot) in row.iter_mut().enumerate() {
                        let p = &phi[m][j][k - l];
                        if !p.is_zero() {
                            *slot += &kc[l] * p;
                        }
                    }
                }
            }
        }
        let denom = Rational::from_integer((k as i64 + 1).into());
        for i in 0..TDIM {
            for j in 0..TDIM {
                let v = &next[i][j] / &denom;
                phi[i][j].push(v);
            }
        }
    }
    let phi_j: Matrix<Jet> = phi.into_iter().map(|row| row.into_iter().map(|c| Jet::from_coeffs(c, n)).collect()).collect();
    let phi_inv = inverse(&phi_j)?;

    // --- fields along γ ------------------------------------------------------
    let xg: Vec<Vec<Jet>> = lift.xf.iter().map(|row| row.iter().map(|f| eval_jet(f, &gam)).collect::<Result<_, _>>()).collect::<Result<_, _>>()?;
    let omg: Vec<Vec<Jet>> = lift.om.iter().map(|row| row.iter().map(|f| eval_jet(f, &gam)).collect::<Result<_, _>>()).collect::<Result<_, _>>()?;
    let dxg: Vec<Vec<Vec<Jet>>> = lift
        .dx
        .iter()
        .map(|m| m.iter().map(|row| row.iter().map(|f| eval_jet(f, &gam)).collect::<Result<_, _>>()).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;
    let pg = &gam[DIM..];
    let zj = || Jet::zero(n);
    let du_g = |j: usize, v: &[Jet]| -> Jet {
        let mut acc = zj();
        for a in 0..DIM {
            acc = &acc + &(&v[DIM + a] * &xg[j][a]);
            for b in 0..DIM {
                if !dxg[j][a][b].is_zero() {
                    acc = &acc + &(&(&pg[a] * &dxg[j][a][b]) * &v[b]);
                }
            }
        }
        acc
    };
    let uvec = |i: usize| -> Vec<Jet> {
        let mut v: Vec<Jet> = xg[i].clone();
        for b in 0..DIM {
            let mut acc = zj();
            for a in 0..DIM {
                if !dxg[i][a][b].is_zero() {
                    acc = &acc + &(&pg[a] * &dxg[i][a][b]);
                }
            }
            v.push(-&acc);
        }
        // project onto T(D²)^⊥ along the vertical directions dual to u1..u3
        for j in 0..3 {
            let d = du_g(j, &v);
            for a in 0..DIM {
                v[DIM + a] = &v[DIM + a] - &(&d * &omg[j][a]);
            }
        }
        v
    };
    let vert = |i: usize| -> Vec<Jet> { (0..DIM).map(|_| zj()).chain(omg[i].iter().cloned()).collect() };
    let pull = |v: &[Jet]| -> Vec<Jet> {
        (0..TDIM)
            .map(|i| {
                let mut acc = zj();
                for j in 0..TDIM {
                    if !v[j].is_zero() {
                        acc = &acc + &(&phi_inv[i][j] * &v[j]);
                    }
                }
                acc
            })
            .collect()
    };
    let to_chart = |v: &[Jet]| -> Result<Vec<Jet>, OracleError> {
        let mut out: Vec<Jet> = v[..DIM].to_vec();
        for j in 0..DIM {
            let mut d = zj();
            for a in 0..DIM {
                if !at.x0[j][a].is_zero() {
                    d = &d + &v[DIM + a].scale(&at.x0[j][a]);
                }
                for b in 0..DIM {
                    if !at.dx0[j][a][b].is_zero() && !p0[a].is_zero() {
                        d = &d + &v[b].scale(&(&p0[a] * &at.dx0[j][a][b]));
                    }
                }
            }
            if j < 3 {
                if !d.is_zero() {
                    return Err(OracleError::NotTangent { index: j + 1 });
                }
            } else {
                out.push(d);
            }
        }
        Ok(out)
    };

    // --- reduced space -------------------------------------------------------
    let lam0_j: Vec<Jet> = lam0.iter().map(|v| Jet::constant(0, v.clone())).collect();
    let h_full: Vec<Rational> = lift.gvec.iter().map(|f| eval_jet(f, &lam0_j).map(|j| j.value().clone())).collect::<Result<_, _>>()?;
    let h0: Vec<Rational> = to_chart(&h_full.iter().map(|v| Jet::constant(n, v.clone())).collect::<Vec<_>>())?.iter().map(|j| j.value().clone()).collect();
    let mut e0 = vec![zero_r(); CDIM];
    e0[DIM] = u4.clone();
    e0[DIM + 1] = u5.clone();
    let krow: Matrix<Rational> = vec![(0..CDIM).map(|j| at.sig(&e0, &unit(CDIM, j))).collect()];
    let kb = nullspace(&krow, &zero_r());
    let mut cur: Vec<Vec<Rational>> = vec![h0.clone(), e0.clone()];
    if rank(&cur) < 2 {
        return Err(OracleError::DegenerateReducedSpace);
    }
    let mut basis = Vec::new();
    for v in kb {
        let mut trial = cur.clone();
        trial.push(v.clone());
        if rank(&trial) > cur.len() {
            cur = trial;
            basis.push(v);
        }
    }
    if basis.len() != 4 {
        return Err(OracleError::DegenerateReducedSpace);
    }
    let gram: Matrix<Rational> = basis.iter().map(|a| basis.iter().map(|b| at.sig(a, b)).collect()).collect();
    if rank(&gram) < 4 {
        return Err(OracleError::DegenerateReducedSpace);
    }
    let space = ReducedSpace { q0: q0.to_vec(), u: (u4.clone(), u5.clone()), p0: p0.clone(), h0: h0.clone(), e0: e0.clone(), basis, gram };

    // coordinates on W: v = Σ c_i basis_i + a h0 + b e0
    let wmat: Matrix<Rational> = (0..CDIM).map(|r| space.basis.iter().map(|b| b[r].clone()).chain([h0[r].clone(), e0[r].clone()]).collect()).collect();
    let wcoords = |v: &[Rational]| -> Result<Vec<Rational>, OracleError> {
        let (x, _) = solve_general(&wmat, v, &zero_r()).ok_or(OracleError::NotInKernel)?;
        Ok(x[..4].to_vec())
    };
    let wjets = |v: &[Jet]| -> Result<Vec<Jet>, OracleError> {
        let mut cols = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let col: Vec<Rational> = v.iter().map(|j| j.coeff(k).clone()).collect();
            cols.push(wcoords(&col)?);
        }
        Ok((0..4).map(|i| Jet::from_coeffs(cols.iter().map(|c| c[i].clone()).collect(), n)).collect())
    };

    // --- spanning jets of the curve -------------------------------------------
    let (va, vb) = if !u5.is_zero() {
        let a = to_chart(&pull(&vert(3)))?;
        let inv = u5.recip();
        (a.iter().map(|j| j.scale(&inv)).collect::<Vec<_>>(), to_chart(&pull(&uvec(1)))?)
    } else {
        let a = to_chart(&pull(&vert(4)))?;
        let inv = -u4.recip();
        (a.iter().map(|j| j.scale(&inv)).collect::<Vec<_>>(), to_chart(&pull(&uvec(0)))?)
    };
    let ja = wjets(&va)?;
    let jb = wjets(&vb)?;
    let l1: Vec<Rational> = ja.iter().map(|j| j.value().clone()).collect();
    let l2: Vec<Rational> = jb.iter().map(|j| j.value().clone()).collect();
    if !space.sbar(&l1, &l2).is_zero() {
        return Err(OracleError::NotLagrangian);
    }

    // --- symplectic completion d1, d2 of (l1, l2) ---------------------------------
    let rows: Matrix<Rational> = [&l1, &l2].iter().map(|l| (0..4).map(|i| (0..4).fold(zero_r(), |acc, j| acc + &space.gram[i][j] * &l[j])).collect()).collect();
    let solve_d = |target: [i64; 2]| -> Result<Vec<Rational>, OracleError> {
        let rhs: Vec<Rational> = target.iter().map(|&t| Rational::from_integer(t.into())).collect();
        Ok(solve_general(&rows, &rhs, &zero_r()).ok_or(OracleError::NotLagrangian)?.0)
    };
    let d1 = solve_d([1, 0])?;
    let mut d2 = solve_d([0, 1])?;
    let s12 = -space.sbar(&d1, &d2);
    for (a, b) in d2.iter_mut().zip(&l1) {
        *a += &s12 * b;
    }
    debug_assert!(space.sbar(&d1, &d2).is_zero());

    let sb = |a: &[Rational], v: &[Jet]| -> Jet {
        let mut acc = zj();
        for j in 0..4 {
            let coef = (0..4).fold(zero_r(), |acc, i| acc + &a[i] * &space.gram[i][j]);
            if !coef.is_zero() {
                acc = &acc + &v[j].scale(&coef);
            }
        }
        acc
    };
    let xy = |v: &[Jet]| [sb(&d1, v), sb(&d2, v), -&sb(&l1, v), -&sb(&l2, v)];
    let ca = xy(&ja);
    let cb = xy(&jb);
    let xm = [[ca[0].clone(), cb[0].clone()], [ca[1].clone(), cb[1].clone()]];
    let ym = [[ca[2].clone(), cb[2].clone()], [ca[3].clone(), cb[3].clone()]];
    let det = &(&xm[0][0] * &xm[1][1]) - &(&xm[0][1] * &xm[1][0]);
    let di = det.inv().map_err(|_| OracleError::NotTransversal)?;
    let xi = [[&xm[1][1] * &di, -&(&xm[0][1] * &di)], [-&(&xm[1][0] * &di), &xm[0][0] * &di]];
    let s: [[Jet; 2]; 2] = std::array::from_fn(|i| std::array::from_fn(|j| &(&ym[i][0] * &xi[0][j]) + &(&ym[i][1] * &xi[1][j])));

    let self_test = sigma_self_test(lift, &lam0, &at)?;
    Ok(CurveChart { s, space, self_test })
}

/// Check the σ conventions at `λ0` on all coordinate vectors of `T*ℝ⁵`.
fn sigma_self_test(lift: &CotangentLift, lam0: &[Rational], at: &AtPoint) -> Result<SigmaSelfTest, OracleError> {
    let q0 = &lam0[..DIM];
    let co = dual_coframe(&lift.frame)?;
    let dom: Vec<_> = co.w.iter().map(exterior_derivative).collect();
    let u0: Vec<Rational> = (0..DIM).map(|i| (0..DIM).fold(zero_r(), |acc, a| acc + &at.p0[a] * &at.x0[i][a])).collect();
    let basis: Vec<Vec<Rational>> = (0..TDIM).map(|i| unit(TDIM, i)).collect();
    let mut hamiltonian = true;
    for i in 0..DIM {
        let mut lift_i: Vec<Rational> = at.x0[i].clone();
        for b in 0..DIM {
            lift_i.push(-(0..DIM).fold(zero_r(), |acc, a| acc + &at.p0[a] * &at.dx0[i][a][b]));
        }
        for v in &basis {
            hamiltonian &= sig10(&lift_i, v) == at.du(i, v);
        }
    }
    let omega_at = |i: usize, v: &[Rational]| (0..DIM).fold(zero_r(), |acc, a| acc + &at.om0[i][a] * &v[a]);
    let mut frame_expression = true;
    for v in &basis {
        for w in &basis {
            let mut rhs = zero_r();
            for i in 0..DIM {
                rhs -= at.du(i, v) * omega_at(i, w) - at.du(i, w) * omega_at(i, v);
                let mut dw = zero_r();
                for a in 0..DIM {
                    for b in 0..DIM {
                        let c = dom[i].get(a, b);
                        if !c.is_zero() {
                            dw += eval_rat(&c, q0)? * &v[a] * &w[b];
                        }
                    }
                }
                // summing get(a,b) V_a W_b over ordered pairs gives dω(V, W)
                rhs -= &u0[i] * dw;
            }
            frame_expression &= sig10(v, w) == rhs;
        }
    }
    Ok(SigmaSelfTest { hamiltonian, frame_expression })
}
