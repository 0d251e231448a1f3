//! Degree invariants of homomorphisms between cycles and of polymorphisms
//! `C_k^n -> C_3`, and the map `delta` sending a polymorphism to the linear
//! form of its coordinate degrees.
//!
//! Every degree is obtained by pushing an edge chain forward, reading off the
//! multiple of `O_l` it becomes, and dividing by a fixed normaliser. A non-zero
//! remainder, or an image that is not a multiple of `O_l`, contradicts the
//! theory and is reported as [`Error::InvariantViolation`].

use rayon::prelude::*;
use serde::Serialize;

use crate::chain::{self, cycle_multiple, oriented_cycle_chain, push_forward, EdgeChain};
use crate::error::{invalid_argument, invalid_parameter, Error, Result};
use crate::graph::{make_cycle, make_power, Graph, TupleCodec};
use crate::minion::{polymorphism_violation, FunctionTable, LinearForm};

/// How coordinate degrees are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeMethod {
    /// Push `O_{k,i}^n` forward and divide by `(2k)^(n-1)`.
    Global,
    /// Push a single `e x_i O_k` forward and halve.
    Local,
    /// Local for arity >= 3 at k >= 7, global otherwise.
    Auto,
}

impl DegreeMethod {
    fn resolve(self, k: usize, n: usize) -> DegreeMethod {
        match self {
            DegreeMethod::Auto if n >= 3 && k >= 7 => DegreeMethod::Local,
            DegreeMethod::Auto => DegreeMethod::Global,
            other => other,
        }
    }
}

fn dump(f: &FunctionTable) -> String {
    const SHOWN: usize = 64;
    let vals = f.values();
    if vals.len() <= SHOWN {
        f.to_json()
    } else {
        format!(
            "{{arity {}, domain {}, first values {:?} ..}}",
            f.arity(),
            f.domain(),
            &vals[..SHOWN]
        )
    }
}

fn multiple_of_cycle(image: &EdgeChain<'_>, what: &str, f: Option<&FunctionTable>) -> Result<i64> {
    cycle_multiple(image)?.ok_or_else(|| {
        Error::InvariantViolation(format!(
            "{what}: image {image:?} is not a multiple of the oriented cycle{}",
            f.map(|t| format!("; f = {}", dump(t))).unwrap_or_default()
        ))
    })
}

fn exact_div(num: i64, den: i64, what: &str, f: &FunctionTable) -> Result<i64> {
    if num % den != 0 {
        return Err(Error::InvariantViolation(format!(
            "{what}: {num} is not divisible by {den}; f = {}",
            dump(f)
        )));
    }
    Ok(num / den)
}

/// The integer `d` with `f_E(O_m) = d * O_l` for a homomorphism `f: C_m -> C_l`
/// given as a vertex map of length `m`.
pub fn unary_degree(f: &[usize], l: usize) -> Result<i64> {
    let source = make_cycle(f.len()).map_err(|e| invalid_argument(e.to_string()))?;
    let target = make_cycle(l)?;
    let o_m = oriented_cycle_chain(&source)?;
    let image = chain::induced_edge_map(&source, &target, f, &o_m)?;
    multiple_of_cycle(&image, "unary degree", None)
}

/// Outcome of checking the three unary degree laws for one homomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UnaryDegreeLaws {
    pub m: usize,
    pub l: usize,
    pub degree: i64,
    /// `|deg| <= m / l`
    pub bounded: bool,
    /// `deg = m (mod 2)`, asserted for odd `l` only
    pub parity: bool,
    /// `m = 4` implies `deg = 0`
    pub four_cycle: bool,
}

impl UnaryDegreeLaws {
    pub fn all_hold(&self) -> bool {
        self.bounded && self.parity && self.four_cycle
    }
}

pub fn check_unary_degree_laws(f: &[usize], l: usize) -> Result<UnaryDegreeLaws> {
    let degree = unary_degree(f, l)?;
    let m = f.len();
    Ok(UnaryDegreeLaws {
        m,
        l,
        degree,
        bounded: degree.unsigned_abs() as usize * l <= m,
        parity: l % 2 == 0 || degree.rem_euclid(2) == (m % 2) as i64,
        four_cycle: m != 4 || degree == 0,
    })
}

/// Rejects tables that are not polymorphisms `C_k^n -> C_3`, naming the
/// first violated edge.
pub fn require_polymorphism(f: &FunctionTable) -> Result<()> {
    if f.target() != 3 {
        return Err(invalid_argument(format!(
            "degrees are defined for tables into C_3, got target size {}",
            f.target()
        )));
    }
    let base = make_cycle(f.domain()).map_err(|e| invalid_argument(e.to_string()))?;
    let triangle = make_cycle(3)?;
    if let Some((u, v)) = polymorphism_violation(f, &base, &triangle)? {
        let codec = f.codec();
        return Err(invalid_argument(format!(
            "not a polymorphism: edge {u:?} -- {v:?} maps to {} -- {}",
            f.values()[codec.encode(&u)],
            f.values()[codec.encode(&v)]
        )));
    }
    Ok(())
}

fn check_coordinate(f: &FunctionTable, i: usize) -> Result<()> {
    if i >= f.arity() {
        return Err(invalid_parameter(format!(
            "coordinate {i} out of range for arity {}",
            f.arity()
        )));
    }
    Ok(())
}

fn global_unchecked(f: &FunctionTable, i: usize, triangle: &Graph) -> Result<i64> {
    let (k, n) = (f.domain(), f.arity());
    let power = make_power(&make_cycle(k)?, n)?;
    let o = chain::oriented_power_chain(&power, k, n, i)?;
    let image = push_forward(triangle, o.terms(), |x| f.values()[x]);
    let multiple = multiple_of_cycle(&image, "global degree", Some(f))?;
    exact_div(
        multiple,
        (2 * k as i64).pow(n as u32 - 1),
        "global degree",
        f,
    )
}

fn local_unchecked(
    f: &FunctionTable,
    i: usize,
    e: (usize, usize),
    triangle: &Graph,
) -> Result<i64> {
    let edges = chain::edge_times_cycle_edges(f.domain(), f.arity(), i, e)?;
    let image = push_forward(triangle, edges.into_iter().map(|(a, b)| (a, b, 1)), |x| {
        f.values()[x]
    });
    let multiple = multiple_of_cycle(&image, "local degree", Some(f))?;
    exact_div(multiple, 2, "local degree", f)
}

fn first_low_edge(k: usize, n: usize) -> Result<(usize, usize)> {
    let low = TupleCodec::new(k, n - 1)?;
    Ok((0, low.encode(&vec![1; n - 1])))
}

/// `deg_i f`: the integer with `f_E(O_{k,i}^n) = (2k)^(n-1) deg_i f * O_3`.
pub fn coordinate_degree_global(f: &FunctionTable, i: usize) -> Result<i64> {
    check_coordinate(f, i)?;
    require_polymorphism(f)?;
    global_unchecked(f, i, &make_cycle(3)?)
}

/// The `d` with `f_E(e x_i O_k) = 2d * O_3`, for an edge `e` of `C_k^(n-1)`
/// given by encoded endpoints.
pub fn coordinate_degree_local(f: &FunctionTable, i: usize, e: (usize, usize)) -> Result<i64> {
    check_coordinate(f, i)?;
    if f.arity() < 2 {
        return Err(invalid_parameter("local degree needs arity >= 2"));
    }
    require_polymorphism(f)?;
    local_unchecked(f, i, e, &make_cycle(3)?)
}

/// Local degrees at coordinate `i` for every edge of `C_k^(n-1)`, in edge order.
pub fn local_degrees_all_edges(f: &FunctionTable, i: usize) -> Result<Vec<i64>> {
    check_coordinate(f, i)?;
    if f.arity() < 2 {
        return Err(invalid_parameter("local degree needs arity >= 2"));
    }
    require_polymorphism(f)?;
    let triangle = make_cycle(3)?;
    let low = make_power(&make_cycle(f.domain())?, f.arity() - 1)?;
    low.edges()
        .iter()
        .map(|&e| local_unchecked(f, i, e, &triangle))
        .collect()
}

/// `deg_{1,2} f`: the integer with
/// `f_E(O_{k,{1,2}}^n) = 2^(n-2) k^(n-1) deg_{1,2} f * O_3`.
pub fn joint_degree(f: &FunctionTable) -> Result<i64> {
    let (k, n) = (f.domain(), f.arity());
    if n < 2 {
        return Err(invalid_parameter("joint degree needs arity >= 2"));
    }
    require_polymorphism(f)?;
    let triangle = make_cycle(3)?;
    let power = make_power(&make_cycle(k)?, n)?;
    let joint = chain::joint_chain(&power, k, n)?;
    let image = push_forward(&triangle, joint.terms(), |x| f.values()[x]);
    let multiple = multiple_of_cycle(&image, "joint degree", Some(f))?;
    let norm = (1i64 << (n - 2)) * (k as i64).pow(n as u32 - 1);
    exact_div(multiple, norm, "joint degree", f)
}

/// All coordinate degrees of a polymorphism, evaluated concurrently.
pub fn degree_vector(f: &FunctionTable, method: DegreeMethod) -> Result<Vec<i64>> {
    require_polymorphism(f)?;
    let (k, n) = (f.domain(), f.arity());
    let triangle = make_cycle(3)?;
    let method = if n == 1 {
        DegreeMethod::Global
    } else {
        method.resolve(k, n)
    };
    let edge = if method == DegreeMethod::Local {
        Some(first_low_edge(k, n)?)
    } else {
        None
    };
    (0..n)
        .into_par_iter()
        .map(|i| match edge {
            Some(e) => local_unchecked(f, i, e, &triangle),
            None => global_unchecked(f, i, &triangle),
        })
        .collect()
}

/// `delta(f) = deg_1 f x_1 + .. + deg_n f x_n`.
pub fn delta(f: &FunctionTable) -> Result<LinearForm> {
    Ok(LinearForm::new(degree_vector(f, DegreeMethod::Auto)?))
}

/// `f'(.., x_i, ..) = f(.., theta(x_i), ..)` with `theta(0) = 0` and
/// `theta(x) = k - x` otherwise.
pub fn reverse_coordinate(f: &FunctionTable, i: usize) -> Result<FunctionTable> {
    check_coordinate(f, i)?;
    let k = f.domain();
    let codec = f.codec();
    let mut image = vec![0; f.arity()];
    FunctionTable::from_fn(f.arity(), k, f.target(), |x| {
        image.copy_from_slice(x);
        image[i] = (k - x[i]) % k;
        f.values()[codec.encode(&image)]
    })
}

/// Largest odd `N` with `3N <= k`.
pub fn largest_odd_n(k: usize) -> Result<usize> {
    if k < 3 || k % 2 == 0 {
        return Err(invalid_parameter(format!("need odd k >= 3, got {k}")));
    }
    let n = k / 3;
    Ok(if n % 2 == 1 { n } else { n - 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minion::{remark_base_map, remark_function};

    fn lift(h: &[usize], n: usize, i: usize) -> FunctionTable {
        FunctionTable::from_fn(n, h.len(), 3, |x| h[x[i]]).unwrap()
    }

    #[test]
    fn unary_examples() {
        assert_eq!(unary_degree(&[0, 1, 2], 3).unwrap(), 1);
        assert_eq!(unary_degree(&[0, 2, 1], 3).unwrap(), -1);
        assert_eq!(unary_degree(&[0, 1, 0, 1], 3).unwrap(), 0);
        assert_eq!(unary_degree(&[0, 1, 0, 1, 2], 3).unwrap(), 1);
        assert!(matches!(
            unary_degree(&[0, 0, 1], 3),
            Err(Error::InvalidArgument(_))
        ));
        let laws = check_unary_degree_laws(&[0, 1, 2, 0, 1, 2, 0, 1, 2], 3).unwrap();
        assert_eq!(laws.degree, 3);
        assert!(laws.all_hold());
    }

    #[test]
    fn odd_n_values() {
        assert_eq!(largest_odd_n(9).unwrap(), 3);
        assert_eq!(largest_odd_n(5).unwrap(), 1);
        assert_eq!(largest_odd_n(15).unwrap(), 5);
        assert_eq!(largest_odd_n(11).unwrap(), 3);
        assert_eq!(largest_odd_n(3).unwrap(), 1);
        assert!(largest_odd_n(8).is_err());
    }

    #[test]
    fn projection_degrees() {
        let h = remark_base_map(5).unwrap();
        let f = lift(&h, 2, 0);
        assert_eq!(coordinate_degree_global(&f, 0).unwrap(), 1);
        assert_eq!(coordinate_degree_global(&f, 1).unwrap(), 0);
        assert_eq!(joint_degree(&f).unwrap(), 1);
        assert_eq!(delta(&f).unwrap().coeffs, vec![1, 0]);
        let unary = lift(&h, 1, 0);
        assert_eq!(
            coordinate_degree_global(&unary, 0).unwrap(),
            unary_degree(&h, 3).unwrap()
        );
        assert!(coordinate_degree_global(&f, 2).is_err());
    }

    #[test]
    fn remark_function_degrees() {
        let f = remark_function(5, 2).unwrap();
        assert_eq!(coordinate_degree_global(&f, 0).unwrap(), 1);
        assert_eq!(coordinate_degree_global(&f, 1).unwrap(), 0);
        assert_eq!(joint_degree(&f).unwrap(), 1);
        for i in 0..2 {
            let locals = local_degrees_all_edges(&f, i).unwrap();
            assert_eq!(locals.len(), 5);
            assert!(locals.iter().all(|&d| d == [1, 0][i]));
        }
        let r = reverse_coordinate(&f, 0).unwrap();
        assert_eq!(delta(&r).unwrap().coeffs, vec![-1, 0]);
        assert_eq!(reverse_coordinate(&r, 0).unwrap(), f);
        assert!(reverse_coordinate(&f, 2).is_err());
    }

    #[test]
    fn methods_agree() {
        let f = remark_function(7, 3).unwrap();
        let global = degree_vector(&f, DegreeMethod::Global).unwrap();
        let local = degree_vector(&f, DegreeMethod::Local).unwrap();
        assert_eq!(global, local);
        assert_eq!(global, vec![1, 0, 0]);
    }

    #[test]
    fn rejects_non_polymorphisms() {
        let bad = FunctionTable::new(1, 3, 3, vec![0, 0, 1]).unwrap();
        let err = delta(&bad).unwrap_err();
        assert!(err.to_string().contains("[0] -- [1]"), "{err}");
        let wrong_target = FunctionTable::new(1, 3, 4, vec![0, 1, 2]).unwrap();
        assert!(delta(&wrong_target).is_err());
    }
}
