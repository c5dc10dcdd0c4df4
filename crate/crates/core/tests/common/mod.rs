#![allow(dead_code)]

use contact_curvature::expr::{BinOp, EvalEnv, Expr, Func};
use contact_curvature::jet::Jet2;
use rand::Rng;

pub const VARS: [&str; 3] = ["x", "y", "z"];

/// Random expression in x, y, z that is smooth on [−1, 1]³: divisions,
/// logarithms, roots and tangents only see arguments bounded away from
/// their singularities.
pub fn random_expr(rng: &mut impl Rng, depth: u32) -> Expr {
    if depth == 0 || rng.random_bool(0.2) {
        return if rng.random_bool(0.7) {
            Expr::coord(VARS[rng.random_range(0..3)])
        } else {
            Expr::Const((rng.random_range(-20..=20) as f64) / 10.0)
        };
    }
    let a = random_expr(rng, depth - 1);
    let c = Expr::Const;
    match rng.random_range(0..11) {
        0 => Expr::add(a, random_expr(rng, depth - 1)),
        1 => Expr::sub(a, random_expr(rng, depth - 1)),
        2 | 3 => Expr::mul(a, random_expr(rng, depth - 1)),
        4 => Expr::div(a, Expr::add(c(2.5), Expr::call(Func::Sin, random_expr(rng, depth - 1)))),
        5 => Expr::call(Func::Sin, a),
        6 => Expr::call(Func::Cos, a),
        7 => Expr::call(Func::Exp, Expr::call(Func::Sin, a)),
        8 => Expr::call(Func::Log, Expr::add(c(1.0), Expr::mul(a.clone(), a))),
        9 => Expr::call(Func::Sqrt, Expr::add(c(1.0), Expr::mul(a.clone(), a))),
        _ => Expr::Binary(
            BinOp::Pow,
            Box::new(Expr::call(Func::Tan, Expr::mul(c(0.5), Expr::call(Func::Sin, a)))),
            Box::new(c(rng.random_range(1..=3) as f64)),
        ),
    }
}

pub fn env_f64(p: &[f64]) -> EvalEnv<f64> {
    let mut env = EvalEnv::new();
    for (n, v) in VARS.iter().zip(p) {
        env.set_coord(*n, *v);
    }
    env
}

pub fn eval_jet(e: &Expr, p: &[f64]) -> Jet2 {
    let mut env = EvalEnv::new();
    for (n, j) in VARS.iter().zip(Jet2::seed_point(p)) {
        env.set_coord(*n, j);
    }
    e.eval(&env, &Jet2::constant(0.0, p.len()))
        .expect("expression evaluates")
}

pub fn eval(e: &Expr, p: &[f64]) -> f64 {
    e.eval_f64(&env_f64(p)).expect("expression evaluates")
}

/// Central-difference gradient and Hessian.
pub fn finite_differences(e: &Expr, p: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let d = p.len();
    let h1 = 1e-5;
    let h2 = 1e-4;
    let at = |shifts: &[(usize, f64)]| {
        let mut q = p.to_vec();
        for &(i, s) in shifts {
            q[i] += s;
        }
        eval(e, &q)
    };
    let grad = (0..d)
        .map(|i| (at(&[(i, h1)]) - at(&[(i, -h1)])) / (2.0 * h1))
        .collect();
    let mut hess = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..d {
            hess[i * d + j] = if i == j {
                (at(&[(i, h2)]) - 2.0 * at(&[]) + at(&[(i, -h2)])) / (h2 * h2)
            } else {
                (at(&[(i, h2), (j, h2)]) - at(&[(i, h2), (j, -h2)]) - at(&[(i, -h2), (j, h2)])
                    + at(&[(i, -h2), (j, -h2)]))
                    / (4.0 * h2 * h2)
            };
        }
    }
    (grad, hess)
}

/// `|a − b| / max(|b|, 1)`.
pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}
