use std::collections::HashMap;

use super::*;
use crate::Poly;

fn v(name: &str) -> Poly {
    Poly::var(Var::new(name))
}

fn c(value: i64) -> Poly {
    Poly::int(value)
}

fn e(name: &str) -> Expr {
    Expr::var(name)
}

#[test]
fn boolean_axiom_reduces_to_zero() {
    let x2_minus_x = e("x").pow(2).sub(e("x"));
    assert!(x2_minus_x.normalize().is_zero());
}

#[test]
fn shifted_square_reduces_to_zero() {
    let one_minus_y = Expr::int(1).sub(e("y"));
    let expr = one_minus_y.clone().pow(2).sub(one_minus_y);
    assert!(expr.normalize().is_zero());
}

#[test]
fn exponent_collapse_and_merge() {
    let expr = Expr::Sum(vec![
        Expr::Product(vec![e("x").pow(3), e("y").pow(2)]),
        Expr::Product(vec![e("x"), e("y")]),
    ]);
    let p = expr.normalize();
    assert_eq!(p, &c(2) * &(&v("x") * &v("y")));
    assert_eq!(p.to_string(), "2*x*y");
}

#[test]
fn commutativity() {
    let expr = Expr::Product(vec![e("x"), e("y")]).sub(Expr::Product(vec![e("y"), e("x")]));
    assert!(expr.normalize().is_zero());
}

#[test]
fn zero_exponent_is_one() {
    assert_eq!(e("x").pow(0).normalize(), Poly::one());
}

#[test]
fn display_is_canonical() {
    let p = &(&v("x") + &(&c(2) * &v("y"))) - &c(2);
    assert_eq!(p.to_string(), "x+2*y-2");
    let q = &(&(&v("y") * &v("z")) - &v("y")) - &(&v("z") - &c(1));
    assert_eq!(q.to_string(), "y*z-y-z+1");
    assert_eq!(Poly::zero().to_string(), "0");
    assert_eq!((-v("w3")).to_string(), "-w3");
}

#[test]
fn substitution_instantiates_example_inputs() {
    let phi: Substitution = [("v1", v("x")), ("v2", &c(1) - &v("y")), ("v3", v("z"))]
        .into_iter()
        .map(|(n, p)| (Var::new(n), p))
        .collect();
    let p1 = &v("v1") - &(&c(2) * &v("v2"));
    assert_eq!(p1.substitute(&phi).unwrap().to_string(), "x+2*y-2");
    let p2 = &v("v2") - &v("v3");
    assert_eq!(p2.substitute(&phi).unwrap().to_string(), "-y-z+1");
}

#[test]
fn substitution_requires_total_domain() {
    let phi: Substitution = [(Var::new("v1"), v("x"))].into_iter().collect();
    let p = &v("v1") + &v("v2");
    assert_eq!(p.substitute(&phi), Err(PolyError::UnmappedVariable(Var::new("v2"))));
}

#[test]
fn identity_substitution() {
    let p = &(&v("a") * &v("b")) - &(&c(3) * &v("c"));
    let vars = p.vars();
    let phi = Substitution::identity(&vars);
    assert_eq!(p.substitute(&phi).unwrap(), p);
}

#[test]
fn boolean_valued_examples() {
    assert!((&c(1) - &v("y")).is_boolean_valued());
    assert!(v("x").is_boolean_valued());
    assert!(!(&v("x") + &v("y")).is_boolean_valued());
    assert!((&v("x") * &v("y")).is_boolean_valued());
    assert!(Poly::zero().is_boolean_valued());
    assert!(!c(2).is_boolean_valued());
    // x + y - 2xy is xor
    let xor = &(&v("x") + &v("y")) - &(&c(2) * &(&v("x") * &v("y")));
    assert!(xor.is_boolean_valued());
}

#[test]
fn linear_combination_examples() {
    let parts = [(c(1), &v("v1") - &(&c(2) * &v("v2"))), (c(2), &v("v2") - &v("v3"))];
    let r = Poly::linear_combination(parts.iter().map(|(a, b)| (a, b)));
    assert_eq!(r.to_string(), "v1-2*v3");

    let l5 = &(&v("a") - &v("x")) + &c(1);
    let l6 = &v("x") - &(&c(2) * &v("z"));
    let l7 = &v("a") - &(&c(2) * &v("z"));
    let parts = [(c(1), l5), (c(1), l6), (c(-1), l7)];
    assert_eq!(Poly::linear_combination(parts.iter().map(|(a, b)| (a, b))), c(1));

    let p1 = &v("v1") * &v("v2");
    let p2 = &(&(&(&v("v2") * &v("v3")) - &v("v2")) - &v("v3")) + &c(1);
    let p3 = &(&c(1) - &v("w3")) - &v("v3");
    let q3 = &(&v("v1") * &v("v2")) - &v("v1");
    let parts = [(v("w3"), p1), (v("v1"), p2), (q3, p3)];
    let r = Poly::linear_combination(parts.iter().map(|(a, b)| (a, b)));
    assert_eq!(r, &v("v1") * &v("w3"));
}

#[test]
fn equal_mod_boolean_examples() {
    assert!(e("x").pow(2).normalize().equal_mod_boolean(&v("x")));
    let l6 = &v("x") - &(&c(2) * &v("z"));
    let l7 = &v("a") - &(&c(2) * &v("z"));
    assert!(!l6.equal_mod_boolean(&l7));
}

#[test]
fn eval_examples() {
    let point: HashMap<Var, crate::Rational> =
        [("x", 1), ("z", 0)].into_iter().map(|(n, k)| (Var::new(n), crate::Rational::from_integer(k.into()))).collect();
    let p = &v("x") - &(&c(2) * &v("z"));
    assert_eq!(p.eval(&point).unwrap(), crate::Rational::from_integer(1.into()));
    assert_eq!(Poly::zero().eval(&HashMap::new()).unwrap(), crate::Rational::from_integer(0.into()));
    let q = &v("v1") * &v("w3");
    assert_eq!(q.eval(&point), Err(PolyError::UnmappedVariable(Var::new("v1"))));
}

#[test]
fn float_coefficients() {
    let x = crate::PolyF64::var(Var::new("x"));
    let half = crate::PolyF64::constant(0.5);
    let p = &(&x * &x) * &half;
    assert_eq!(p.to_string(), "1/2*x");
    assert_eq!(p.eval_with(|_| Some(1.0)).unwrap(), 0.5);
}
