use std::f64::consts::SQRT_2;

use super::bounds::{interpolation_bounds, pair_interpolation_norms, product_bounds};
use super::{CheckDescriptor, CheckParams, Resolved, Term};
use crate::error::{Error, Result};
use crate::linalg::{abs, min_eigenvalue, offdiag_block, op_norm, sum_outer_grams, ComplexMatrix, I};
use crate::oracle::grid_lambda_sphere_max;
use crate::radii::{euclidean_norm, numerical_radius, omega_e, omega_f, sup_theta_norm, OptimizerBudget};
use crate::scalar::{power_function, ScalarRadiusFunction};

/// Relative slack allowed when testing positive semidefiniteness.
const PSD_SLACK: f64 = 1e-10;

fn hypothesis(desc: &CheckDescriptor, reason: String) -> Error {
    Error::Hypothesis {
        check: desc.name.to_string(),
        reason,
    }
}

pub(super) fn check_hypotheses(desc: &CheckDescriptor, ms: &[ComplexMatrix], p: &Resolved) -> Result<()> {
    match desc.name {
        "thm2.2-chain" | "cor2.2-chain" | "eq2.6-chain" | "thm-squared-chain" if !p.f.is_operator_convex() => {
            Err(hypothesis(desc, format!("{} is not operator convex", p.f.name())))
        }
        "cor2.3-chain" if !(1.0..=2.0).contains(&p.p) => Err(hypothesis(desc, format!("p = {} outside [1, 2]", p.p))),
        "accdiss-chain" => {
            let t = &ms[0];
            let slack = -PSD_SLACK * (1.0 + t.frobenius_norm());
            for (part, m) in [("real", t.real_part()), ("imaginary", t.imag_part())] {
                let low = min_eigenvalue(&m)?;
                if low < slack {
                    return Err(hypothesis(desc, format!("{part} part has eigenvalue {low:.3e} < 0")));
                }
            }
            Ok(())
        }
        "mixed-schwarz" => {
            let d = ms[0].dim();
            for v in [&p.x, &p.y].into_iter().flatten() {
                if v.dim() != d {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        found: v.dim(),
                    });
                }
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

struct Eval<'a> {
    budget: &'a OptimizerBudget,
}

impl Eval<'_> {
    fn omega(&self, t: &ComplexMatrix) -> Result<f64> {
        Ok(numerical_radius(t, self.budget)?.value)
    }

    fn block_omega(&self, t1: &ComplexMatrix, t2: &ComplexMatrix) -> Result<f64> {
        self.omega(&offdiag_block(t1, t2)?)
    }

    fn norm_e(&self, ts: &[ComplexMatrix]) -> Result<f64> {
        Ok(euclidean_norm(ts, self.budget)?.value)
    }

    fn omega_f(&self, ts: &[ComplexMatrix], f: &ScalarRadiusFunction) -> Result<f64> {
        Ok(omega_f(ts, f, self.budget)?.value)
    }
}

fn gram(t: &ComplexMatrix) -> ComplexMatrix {
    &t.adjoint() * t
}

fn outer_gram(t: &ComplexMatrix) -> ComplexMatrix {
    t * &t.adjoint()
}

/// `|T₁| + i|T₂|`.
fn abs_pair(t1: &ComplexMatrix, t2: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(&abs(t1)? + &abs(t2)?.scale_complex(I))
}

/// `ω(|T₁|+i|T₂|)·ω(|T₁*|+i|T₂*|)`.
fn abs_pair_product(e: &Eval, t1: &ComplexMatrix, t2: &ComplexMatrix) -> Result<f64> {
    Ok(e.omega(&abs_pair(t1, t2)?)? * e.omega(&abs_pair(&t1.adjoint(), &t2.adjoint())?)?)
}

/// The block `[[O, ℜT], [ℑT, O]]`; `ℑT` is Hermitian so it equals its adjoint.
fn cartesian_block(t: &ComplexMatrix) -> Result<ComplexMatrix> {
    offdiag_block(&t.real_part(), &t.imag_part())
}

fn interpolation_terms(
    e: &Eval,
    ts: &[ComplexMatrix],
    f: &ScalarRadiusFunction,
    alpha: f64,
    lambda: f64,
    b1_label: &str,
) -> Result<Vec<Term>> {
    let b = interpolation_bounds(ts, f, alpha, lambda)?;
    Ok(vec![
        Term::sup("ω_f(T1..Tn)", e.omega_f(ts, f)?),
        Term::exact(b1_label, b.b1),
        Term::exact("B2", b.b2),
        Term::exact("B3", b.b3),
    ])
}

/// Terms of check `name`, in chain order.
pub(super) fn terms(name: &str, ms: &[ComplexMatrix], p: &Resolved, budget: &OptimizerBudget) -> Result<Vec<Term>> {
    let e = Eval { budget };
    let terms = match name {
        "equiv-intro" => {
            let t = &ms[0];
            let n = op_norm(t)?;
            vec![
                Term::exact("‖T‖/2", n / 2.0),
                Term::sup("ω(T)", e.omega(t)?),
                Term::exact("‖T‖", n),
            ]
        }
        "kittaneh-1" => {
            let t = &ms[0];
            vec![
                Term::sup("ω(T)", e.omega(t)?),
                Term::exact("½‖|T|+|T*|‖", op_norm(&(&abs(t)? + &abs(&t.adjoint())?))? / 2.0),
            ]
        }
        "kittaneh-2" => {
            let t = &ms[0];
            let s = op_norm(&(&gram(t) + &outer_gram(t)))?;
            let w = e.omega(t)?;
            vec![
                Term::exact("¼‖|T|²+|T*|²‖", s / 4.0),
                Term::sup("ω²(T)", w * w),
                Term::exact("½‖|T|²+|T*|²‖", s / 2.0),
            ]
        }
        "hirz-equality" => {
            let (a, b) = (&ms[0], &ms[1]);
            vec![
                Term::sup("½sup_θ‖A+e^{iθ}B*‖", sup_theta_norm(a, b, budget)?.value / 2.0),
                Term::sup("ω([[O,A],[B,O]])", e.block_omega(a, &b.adjoint())?),
            ]
        }
        "prod-block" => {
            let (a, b) = (&ms[0], &ms[1]);
            let a_star = a.adjoint();
            let lhs = e.omega(&(&a_star * b))?.max(e.omega(&(b * &a_star))?);
            let w = e.block_omega(&a_star, &b.adjoint())?;
            vec![
                Term::sup("max{ω(A*B),ω(BA*)}", lhs),
                Term::sup("ω²([[O,A*],[B,O]])", w * w),
            ]
        }
        "norme-upper" => vec![
            Term::sup("‖(T1..Tn)‖ₑ", e.norm_e(ms)?),
            Term::exact("‖ΣTT*‖^{1/2}", op_norm(&sum_outer_grams(ms))?.sqrt()),
        ],
        "mixed-schwarz" => {
            let t = &ms[0];
            let (x, y) = match (&p.x, &p.y) {
                (Some(x), Some(y)) => (x.clone(), y.clone()),
                _ => {
                    let (rx, ry) = CheckParams::random_vectors(t.dim(), budget.seed);
                    (p.x.clone().unwrap_or(rx), p.y.clone().unwrap_or(ry))
                }
            };
            let (x, y) = (x.as_slice(), y.as_slice());
            let lhs = t.inner_form(x, y).norm_sqr();
            let left = crate::linalg::psd_power(&gram(t), 1.0 - p.alpha)?;
            let right = crate::linalg::psd_power(&outer_gram(t), p.alpha)?;
            let rhs = left.quadratic_form(x).re * right.quadratic_form(y).re;
            vec![
                Term::exact("|⟨Tx,y⟩|²", lhs),
                Term::exact("⟨|T|^{2(1−α)}x,x⟩⟨|T*|^{2α}y,y⟩", rhs),
            ]
        }
        "thm0-upper" => vec![
            Term::sup("ω([[O,T1],[T2*,O]])", e.block_omega(&ms[0], &ms[1])?),
            Term::sup("‖(T1,T2)‖ₑ/√2", e.norm_e(ms)? / SQRT_2),
        ],
        "cor02-chain" => {
            let t = &ms[0];
            let w = e.omega(t)?;
            let n = e.norm_e(&[t.clone(), t.adjoint()])?;
            vec![
                Term::sup("ω²(T)", w * w),
                Term::sup("½‖(T,T*)‖ₑ²", n * n / 2.0),
                Term::exact("½‖TT*+T*T‖", op_norm(&(&outer_gram(t) + &gram(t)))? / 2.0),
            ]
        }
        "prod-refine" => {
            let (a, b) = (&ms[0], &ms[1]);
            let n = e.norm_e(ms)?;
            vec![
                Term::sup("ω(B*A)", e.omega(&(&b.adjoint() * a))?),
                Term::sup("½‖(A,B)‖ₑ²", n * n / 2.0),
                Term::exact("½‖|A|²+|B|²‖", op_norm(&(&gram(a) + &gram(b)))? / 2.0),
            ]
        }
        "cor04-chain" => {
            let t = &ms[0];
            vec![
                Term::sup("ω([[O,ℜT],[ℑT,O]])", e.omega(&cartesian_block(t)?)?),
                Term::exact("½‖T*T+TT*‖^{1/2}", op_norm(&(&gram(t) + &outer_gram(t)))?.sqrt() / 2.0),
                Term::sup("ω(T)", e.omega(t)?),
            ]
        }
        "thm08-lower" => vec![
            Term::sup("½‖(T1,T2)‖ₑ", e.norm_e(ms)? / 2.0),
            Term::sup("ω([[O,T1],[T2*,O]])", e.block_omega(&ms[0], &ms[1])?),
        ],
        "blocks-chain-1" | "blocks-chain-2" => {
            let (t1, t2) = (&ms[0], &ms[1]);
            let half_sum = (t1 + t2).scale(0.5);
            let half_diff = (t1 - t2).scale(0.5);
            let twisted = e.block_omega(&half_sum, &half_diff)?;
            let n = e.norm_e(ms)?;
            let w = e.block_omega(t1, t2)?;
            if name == "blocks-chain-1" {
                vec![
                    Term::sup("ω([[O,(T1+T2)/2],[((T1−T2)/2)*,O]])", twisted),
                    Term::sup("½‖(T1,T2)‖ₑ", n / 2.0),
                    Term::sup("ω([[O,T1],[T2*,O]])", w),
                ]
            } else {
                vec![
                    Term::sup("½ω([[O,T1],[T2*,O]])", w / 2.0),
                    Term::sup("(√2/4)‖(T1,T2)‖ₑ", SQRT_2 / 4.0 * n),
                    Term::sup("ω([[O,(T1+T2)/2],[((T1−T2)/2)*,O]])", twisted),
                ]
            }
        }
        "parallelogram-e" => {
            let (t1, t2) = (&ms[0], &ms[1]);
            vec![
                Term::sup("(√2/2)‖(T1+T2,T1−T2)‖ₑ", SQRT_2 / 2.0 * e.norm_e(&[t1 + t2, t1 - t2])?),
                Term::sup("‖(T1,T2)‖ₑ", e.norm_e(ms)?),
            ]
        }
        "tt-identity" => {
            let t = &ms[0];
            vec![
                Term::exact("√2‖T‖", SQRT_2 * op_norm(t)?),
                Term::sup("‖(T,T)‖ₑ", e.norm_e(&[t.clone(), t.clone()])?),
            ]
        }
        "blockss-chain-1" | "blockss-chain-2" => {
            let t = &ms[0];
            let b = e.omega(&cartesian_block(t)?)?;
            let n = e.norm_e(&[t.adjoint(), t.clone()])?;
            let w = e.omega(t)?;
            if name == "blockss-chain-1" {
                vec![
                    Term::sup("ω([[O,ℜT],[ℑT,O]])", b),
                    Term::sup("½‖(T*,T)‖ₑ", n / 2.0),
                    Term::sup("ω(T)", w),
                ]
            } else {
                vec![
                    Term::sup("½ω(T)", w / 2.0),
                    Term::sup("(√2/4)‖(T*,T)‖ₑ", SQRT_2 / 4.0 * n),
                    Term::sup("ω([[O,ℜT],[ℑT,O]])", b),
                ]
            }
        }
        "thm-i-upper" => vec![
            Term::sup("‖(T1,T2)‖ₑ", e.norm_e(ms)?),
            Term::sup(
                "(ω(|T1|+i|T2|)ω(|T1*|+i|T2*|))^{1/2}",
                abs_pair_product(&e, &ms[0], &ms[1])?.sqrt(),
            ),
        ],
        "cor-newblock" => vec![
            Term::sup("ω([[O,T1],[T2*,O]])", e.block_omega(&ms[0], &ms[1])?),
            Term::sup(
                "(1/√2)(ω(|T1|+i|T2|)ω(|T1*|+i|T2*|))^{1/2}",
                abs_pair_product(&e, &ms[0], &ms[1])?.sqrt() / SQRT_2,
            ),
        ],
        "baseline-avg-norms" => vec![
            Term::sup("ω([[O,T1],[T2*,O]])", e.block_omega(&ms[0], &ms[1])?),
            Term::exact("(‖T1‖+‖T2‖)/2", (op_norm(&ms[0])? + op_norm(&ms[1])?) / 2.0),
        ],
        "baseline-avg-omegas" => {
            let (t1, t2) = (&ms[0], &ms[1]);
            let t2s = t2.adjoint();
            vec![
                Term::sup("ω([[O,T1],[T2*,O]])", e.block_omega(t1, t2)?),
                Term::sup(
                    "(ω(T1+T2*)+ω(T1−T2*))/2",
                    (e.omega(&(t1 + &t2s))? + e.omega(&(t1 - &t2s))?) / 2.0,
                ),
            ]
        }
        "thm-block-we" => {
            let (t1, t2) = (&ms[0], &ms[1]);
            let left = omega_e(&[abs(t1)?, abs(t2)?], budget)?.value;
            let right = omega_e(&[abs(&t1.adjoint())?, abs(&t2.adjoint())?], budget)?.value;
            vec![
                Term::sup("ω([[O,T1],[T2*,O]])", e.block_omega(t1, t2)?),
                Term::sup(
                    "(√2/2)(ω_e(|T1|,|T2|)ω_e(|T1*|,|T2*|))^{1/2}",
                    SQRT_2 / 2.0 * (left * right).sqrt(),
                ),
            ]
        }
        "accdiss-chain" => {
            let t = &ms[0];
            vec![
                Term::exact("‖T‖", op_norm(t)?),
                Term::sup("2ω([[O,ℜT],[ℑT,O]])", 2.0 * e.omega(&cartesian_block(t)?)?),
                Term::sup("√2ω(T)", SQRT_2 * e.omega(t)?),
            ]
        }
        "thm2.2-chain" => interpolation_terms(&e, ms, &p.f, p.alpha, p.lambda, "B1")?,
        "cor2.2-chain" => interpolation_terms(&e, ms, &p.f, 0.5, p.lambda, "B1")?,
        "eq2.6-chain" => interpolation_terms(&e, ms, &p.f, 0.5, 0.5, "f⁻¹(½‖Σf((|T|+3|T*|)/4)+f((3|T|+|T*|)/4)‖)")?,
        "cor2.3-chain" => {
            let f = power_function(p.p)?;
            interpolation_terms(&e, ms, &f, 0.5, p.lambda, "B1")?
        }
        "sm2021-refine" => {
            let t = &ms[0];
            let w = e.omega(t)?;
            let square = power_function(2.0)?;
            let norms = pair_interpolation_norms(&[(abs(t)?, abs(&t.adjoint())?)], &square, 0.5)?;
            vec![
                Term::sup("ω²(T)", w * w),
                Term::exact("½‖((|T|+3|T*|)/4)²+((3|T|+|T*|)/4)²‖", norms.interpolant),
                Term::exact("‖∫(t|T|+(1−t)|T*|)²dt‖", norms.integral),
                Term::exact("½‖|T|²+|T*|²‖", norms.endpoint),
            ]
        }
        "thm-squared-chain" => {
            let n = ms.len() / 2;
            let (ss, ts) = ms.split_at(n);
            let products: Vec<ComplexMatrix> = ss.iter().zip(ts).map(|(s, t)| &t.adjoint() * s).collect();
            let (integral, endpoint) = product_bounds(ss, ts, &p.f)?;
            vec![
                Term::sup("ω_f(T1*S1..Tn*Sn)", e.omega_f(&products, &p.f)?),
                Term::exact("f⁻¹‖∫Σf(t|S|²+(1−t)|T|²)dt‖", integral),
                Term::exact("f⁻¹(½‖Σf(|S|²)+f(|T|²)‖)", endpoint),
            ]
        }
        "lambda-sphere-max" => vec![
            Term::sup("max|λ1+λ2|", grid_lambda_sphere_max(budget.grid_points)?),
            Term::exact("√2", SQRT_2),
        ],
        other => return Err(Error::UnknownCheck(other.to_string())),
    };
    Ok(terms)
}
