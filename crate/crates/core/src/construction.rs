//! The map `eta` from linear forms in `Z_{<=N}` back to polymorphisms
//! `C_k^n -> C_3`, built as `h_k . eta'` where `eta'(f)` reduces `f` modulo
//! `k` (a polymorphism into `D_k`) and `h_k` 3-colours `D_k`.
//!
//! `h_k` exists for `k = 3N`; for larger `k` the table built at `k0 = 3N` is
//! pulled back along [`fold_hom`].

use serde::Serialize;

use crate::degree::{delta, largest_odd_n};
use crate::error::{invalid_argument, invalid_parameter, Result};
use crate::graph::{fold_hom, make_cycle};
use crate::minion::{is_in_z_leq_n, pullback, FunctionTable, LinearForm, MinorMap};

/// The 3-colouring of `D_{3N}`: `0` for even `x < N` and odd `x > 2N`,
/// `1` for odd `x < 2N`, `2` for even `x > N`.
pub fn h_k(k: usize) -> Result<Vec<usize>> {
    if k % 3 != 0 || (k / 3) % 2 == 0 {
        return Err(invalid_parameter(format!(
            "h_k needs k = 3N with N odd, got {k}"
        )));
    }
    let n = k / 3;
    Ok((0..k)
        .map(|x| {
            let odd = x % 2 == 1;
            if (x < n && !odd) || (x > 2 * n && odd) {
                0
            } else if x < 2 * n && odd {
                1
            } else {
                2
            }
        })
        .collect())
}

fn require_member(f: &LinearForm, k: usize) -> Result<usize> {
    let n = largest_odd_n(k)?;
    if !is_in_z_leq_n(f, n as i64)? {
        return Err(invalid_argument(format!(
            "{:?} is not in Z_<={n} (needs sum |c_i| <= {n} and odd sum)",
            f.coeffs
        )));
    }
    Ok(n)
}

fn reduce(f: &LinearForm, k: usize, x: &[usize]) -> usize {
    f.eval(x).rem_euclid(k as i64) as usize
}

/// `eta'(f)(x) = f(x) mod k`, a polymorphism `C_k^n -> D_k` for
/// `f` in `Z_{<=N}` with `N` the largest odd number with `3N <= k`.
pub fn eta_prime(f: &LinearForm, k: usize) -> Result<FunctionTable> {
    require_member(f, k)?;
    if f.arity() == 0 {
        return Err(invalid_parameter("linear form has no coordinates"));
    }
    FunctionTable::from_fn(f.arity(), k, k, |x| reduce(f, k, x))
}

/// `eta(f)`: a polymorphism `C_k^n -> C_3`.
pub fn eta(f: &LinearForm, k: usize) -> Result<FunctionTable> {
    let n = require_member(f, k)?;
    if f.arity() == 0 {
        return Err(invalid_parameter("linear form has no coordinates"));
    }
    let k0 = 3 * n;
    let colour = h_k(k0)?;
    let table = FunctionTable::from_fn(f.arity(), k0, 3, |x| colour[reduce(f, k0, x)])?;
    if k0 == k {
        return Ok(table);
    }
    let fold = fold_hom(k, k0)?;
    pullback(&table, &make_cycle(k)?, &make_cycle(k0)?, &fold)
}

/// Whether `delta(eta(f)) = f`.
pub fn roundtrip_check(f: &LinearForm, k: usize) -> Result<bool> {
    Ok(delta(&eta(f, k)?)? == *f)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum GeneratorKind {
    Cyclic(usize),
    Siggers,
    Olsak,
    /// `s_0 x_0 + .. + s_{N-1} x_{N-1}` with every `s_i = +-1`.
    Full(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorForm {
    pub kind: GeneratorKind,
    pub form: LinearForm,
}

/// The linear form of a named generator, checked for membership in `Z_{<=N}`.
pub fn generator(kind: GeneratorKind, n: usize) -> Result<GeneratorForm> {
    if n % 2 == 0 {
        return Err(invalid_parameter(format!("N must be odd, got {n}")));
    }
    let coeffs = match &kind {
        GeneratorKind::Cyclic(m) => {
            if *m == 0 || *m > n || m % 2 == 0 {
                return Err(invalid_parameter(format!(
                    "cyclic generator needs odd arity <= {n}, got {m}"
                )));
            }
            vec![1; *m]
        }
        GeneratorKind::Siggers | GeneratorKind::Olsak if n < 3 => {
            return Err(invalid_parameter(format!(
                "6-ary generators need N >= 3, got {n}"
            )));
        }
        GeneratorKind::Siggers => vec![1, 0, 1, 0, 1, 0],
        GeneratorKind::Olsak => vec![1, 1, 1, 0, 0, 0],
        GeneratorKind::Full(signs) => {
            if signs.len() != n || signs.iter().any(|s| s.abs() != 1) {
                return Err(invalid_parameter(format!(
                    "full generator needs {n} signs of +-1, got {signs:?}"
                )));
            }
            signs.clone()
        }
    };
    let form = LinearForm::new(coeffs);
    debug_assert!(is_in_z_leq_n(&form, n as i64).unwrap_or(false));
    Ok(GeneratorForm { kind, form })
}

/// A height-one identity `f(lhs) = f(rhs)` over a shared variable set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorIdentity {
    pub name: String,
    pub lhs: MinorMap,
    pub rhs: MinorMap,
}

impl MinorIdentity {
    fn new(name: impl Into<String>, lhs: Vec<usize>, rhs: Vec<usize>, vars: usize) -> Self {
        MinorIdentity {
            name: name.into(),
            lhs: MinorMap::new(lhs, vars).expect("static identity"),
            rhs: MinorMap::new(rhs, vars).expect("static identity"),
        }
    }
}

/// `c(x_1, .., x_n) = c(x_2, .., x_n, x_1)`.
pub fn cyclic_identity(n: usize) -> MinorIdentity {
    MinorIdentity::new(
        format!("cyclic-{n}"),
        (0..n).collect(),
        (0..n).map(|i| (i + 1) % n).collect(),
        n,
    )
}

/// `s(x,y,x,z,y,z) = s(y,x,z,x,z,y)`.
pub fn siggers_identity() -> MinorIdentity {
    MinorIdentity::new("siggers", vec![0, 1, 0, 2, 1, 2], vec![1, 0, 2, 0, 2, 1], 3)
}

/// `o(x,x,y,y,y,x) = o(x,y,x,y,x,y) = o(y,x,x,x,y,y)`, as three pairwise equalities.
pub fn olsak_identities() -> Vec<MinorIdentity> {
    let a = vec![0, 0, 1, 1, 1, 0];
    let b = vec![0, 1, 0, 1, 0, 1];
    let c = vec![1, 0, 0, 0, 1, 1];
    vec![
        MinorIdentity::new("olsak-1=2", a.clone(), b.clone(), 2),
        MinorIdentity::new("olsak-2=3", b, c.clone(), 2),
        MinorIdentity::new("olsak-1=3", a, c, 2),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_homomorphism, make_dk};
    use crate::minion::{check_identity, is_polymorphism, linear_minor, minor};

    #[test]
    fn h9_values() {
        assert_eq!(h_k(9).unwrap(), vec![0, 1, 0, 1, 2, 1, 2, 0, 2]);
        assert_eq!(h_k(3).unwrap(), vec![0, 1, 2]);
        assert!(h_k(6).is_err());
        assert!(h_k(10).is_err());
        let c3 = make_cycle(3).unwrap();
        for n in [1, 3, 5, 7] {
            let k = 3 * n;
            assert!(is_homomorphism(&make_dk(k, n).unwrap(), &c3, &h_k(k).unwrap()).unwrap());
        }
    }

    #[test]
    fn eta_prime_values() {
        let f = LinearForm::new(vec![1, -1, 1]);
        let t = eta_prime(&f, 9).unwrap();
        assert_eq!(t.eval(&[2, 5, 1]), 7);
        assert!(is_polymorphism(&t, &make_cycle(9).unwrap(), &make_dk(9, 3).unwrap()).unwrap());
        let id = eta_prime(&LinearForm::new(vec![1]), 3).unwrap();
        assert_eq!(id.values(), &[0, 1, 2]);
        assert!(eta_prime(&LinearForm::new(vec![1, 1]), 9).is_err());
        assert!(eta_prime(&LinearForm::new(vec![1, 1, 1, 1, 1]), 9).is_err());
    }

    #[test]
    fn eta_prime_preserves_minors() {
        let f = LinearForm::new(vec![1, -1, 1]);
        for pi in MinorMap::all(3, 2) {
            let lhs = eta_prime(&linear_minor(&f, &pi).unwrap(), 9).unwrap();
            let rhs = minor(&eta_prime(&f, 9).unwrap(), &pi).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn eta_values() {
        let id = eta(&LinearForm::new(vec![1]), 3).unwrap();
        assert_eq!(id.values(), &[0, 1, 2]);
        let c3 = make_cycle(3).unwrap();
        let c9 = make_cycle(9).unwrap();
        let t = eta(&LinearForm::new(vec![1, 1, 1]), 9).unwrap();
        assert_eq!(t.values().len(), 729);
        assert!(is_polymorphism(&t, &c9, &c3).unwrap());
        let t = eta(&LinearForm::new(vec![1, -1, 1]), 9).unwrap();
        assert!(is_polymorphism(&t, &c9, &c3).unwrap());
        for k in [5, 7, 11, 13] {
            let t = eta(&LinearForm::new(vec![1, 0]), k).unwrap();
            assert!(
                is_polymorphism(&t, &make_cycle(k).unwrap(), &c3).unwrap(),
                "k={k}"
            );
        }
    }

    #[test]
    fn roundtrips() {
        assert!(roundtrip_check(&LinearForm::new(vec![1]), 3).unwrap());
        assert!(roundtrip_check(&LinearForm::new(vec![1, 1, 1]), 9).unwrap());
        assert!(roundtrip_check(&LinearForm::new(vec![1, -1, 1]), 9).unwrap());
        assert!(roundtrip_check(&LinearForm::new(vec![0, -1]), 11).unwrap());
    }

    #[test]
    fn generators() {
        assert_eq!(
            generator(GeneratorKind::Olsak, 3).unwrap().form.coeffs,
            vec![1, 1, 1, 0, 0, 0]
        );
        assert_eq!(
            generator(GeneratorKind::Siggers, 3).unwrap().form.coeffs,
            vec![1, 0, 1, 0, 1, 0]
        );
        assert_eq!(
            generator(GeneratorKind::Cyclic(3), 3).unwrap().form.coeffs,
            vec![1, 1, 1]
        );
        assert!(generator(GeneratorKind::Olsak, 1).is_err());
        assert!(generator(GeneratorKind::Cyclic(5), 3).is_err());
        assert!(generator(GeneratorKind::Cyclic(2), 3).is_err());
        assert!(generator(GeneratorKind::Full(vec![1, -1, 1]), 3).is_ok());
        assert!(generator(GeneratorKind::Full(vec![1, 2, 1]), 3).is_err());
    }

    #[test]
    fn identities_on_linear_forms() {
        // identity satisfaction at the level of forms
        let holds = |f: &LinearForm, id: &MinorIdentity| {
            linear_minor(f, &id.lhs).unwrap() == linear_minor(f, &id.rhs).unwrap()
        };
        let olsak = generator(GeneratorKind::Olsak, 3).unwrap().form;
        assert!(olsak_identities().iter().all(|id| holds(&olsak, id)));
        let cyclic = generator(GeneratorKind::Cyclic(3), 3).unwrap().form;
        assert!(holds(&cyclic, &cyclic_identity(3)));
        // x1 + x3 + x5 gives 2x + y against y + 2z; x1 + x4 + x5 gives x + y + z on both sides
        let siggers = generator(GeneratorKind::Siggers, 3).unwrap().form;
        assert!(!holds(&siggers, &siggers_identity()));
        assert!(holds(
            &LinearForm::new(vec![1, 0, 0, 1, 1, 0]),
            &siggers_identity()
        ));
    }

    #[test]
    fn olsak_table_identity() {
        let t = eta(&generator(GeneratorKind::Olsak, 3).unwrap().form, 9).unwrap();
        for id in olsak_identities() {
            assert!(check_identity(&t, &id.lhs, &id.rhs).unwrap(), "{}", id.name);
        }
    }
}
