//! Function tables, linear forms and the minor operation on both.
//!
//! Coordinates are 0-based throughout: a minor map `pi` of source arity `m`
//! and target arity `n` sends coordinate `j < m` to `pi[j] < n`, and the minor
//! of `g` along `pi` is `f(x_0..x_{n-1}) = g(x_{pi[0]}, .., x_{pi[m-1]})`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid_argument, invalid_parameter, Result};
use crate::graph::{self, for_each_neighbor_tuple, Graph, TupleCodec};

/// An `n`-ary function `{0..k-1}^n -> {0..t-1}` stored as a flat table in
/// mixed-radix tuple order (first coordinate most significant).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FunctionTable {
    arity: usize,
    domain: usize,
    target: usize,
    values: Vec<usize>,
}

impl FunctionTable {
    pub fn new(arity: usize, domain: usize, target: usize, values: Vec<usize>) -> Result<Self> {
        let codec = TupleCodec::new(domain, arity)?;
        if values.len() != codec.size() {
            return Err(invalid_argument(format!(
                "table for {domain}^{arity} tuples needs {} values, got {}",
                codec.size(),
                values.len()
            )));
        }
        if let Some((i, &v)) = values.iter().enumerate().find(|(_, &v)| v >= target) {
            return Err(invalid_argument(format!(
                "value {v} at index {i} is outside the target range 0..{target}"
            )));
        }
        Ok(FunctionTable {
            arity,
            domain,
            target,
            values,
        })
    }

    pub(crate) fn from_values_unchecked(
        arity: usize,
        domain: usize,
        target: usize,
        values: Vec<usize>,
    ) -> Self {
        debug_assert_eq!(values.len(), domain.pow(arity as u32));
        FunctionTable {
            arity,
            domain,
            target,
            values,
        }
    }

    /// Tabulates `f` over all tuples.
    pub fn from_fn(
        arity: usize,
        domain: usize,
        target: usize,
        mut f: impl FnMut(&[usize]) -> usize,
    ) -> Result<Self> {
        let codec = TupleCodec::new(domain, arity)?;
        let mut tuple = vec![0; arity];
        let values = (0..codec.size())
            .map(|idx| {
                codec.decode_into(idx, &mut tuple);
                f(&tuple)
            })
            .collect();
        Self::new(arity, domain, target, values)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn codec(&self) -> TupleCodec {
        TupleCodec::new(self.domain, self.arity).expect("validated at construction")
    }

    pub fn eval(&self, tuple: &[usize]) -> usize {
        self.values[self.codec().encode(tuple)]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("table serialization")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: FunctionTable = serde_json::from_str(text)
            .map_err(|e| invalid_argument(format!("malformed function table JSON: {e}")))?;
        Self::new(raw.arity, raw.domain, raw.target, raw.values)
    }
}

/// A map `pi: {0..m-1} -> {0..n-1}` driving the minor operation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MinorMap {
    image: Vec<usize>,
    target_arity: usize,
}

impl MinorMap {
    pub fn new(image: Vec<usize>, target_arity: usize) -> Result<Self> {
        if image.is_empty() || target_arity == 0 {
            return Err(invalid_parameter("minor maps need positive arities"));
        }
        if let Some(&bad) = image.iter().find(|&&x| x >= target_arity) {
            return Err(invalid_parameter(format!(
                "minor map value {bad} out of range for target arity {target_arity}"
            )));
        }
        Ok(MinorMap {
            image,
            target_arity,
        })
    }

    pub fn identity(n: usize) -> Self {
        MinorMap {
            image: (0..n).collect(),
            target_arity: n,
        }
    }

    pub fn source_arity(&self) -> usize {
        self.image.len()
    }

    pub fn target_arity(&self) -> usize {
        self.target_arity
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `then . self`: first `self`, then `then`.
    pub fn then(&self, then: &MinorMap) -> Result<MinorMap> {
        if then.source_arity() != self.target_arity {
            return Err(invalid_argument("minor maps do not compose"));
        }
        MinorMap::new(
            self.image.iter().map(|&j| then.image[j]).collect(),
            then.target_arity,
        )
    }

    /// Every map `{0..m-1} -> {0..n-1}`, in lexicographic order of images.
    pub fn all(m: usize, n: usize) -> Vec<MinorMap> {
        let Ok(codec) = TupleCodec::new(n, m) else {
            return Vec::new();
        };
        (0..codec.size())
            .map(|idx| MinorMap {
                image: codec.decode(idx),
                target_arity: n,
            })
            .collect()
    }
}

/// The minor of `g` along `pi`.
pub fn minor(g: &FunctionTable, pi: &MinorMap) -> Result<FunctionTable> {
    if pi.source_arity() != g.arity {
        return Err(invalid_argument(format!(
            "minor map has source arity {}, table has arity {}",
            pi.source_arity(),
            g.arity
        )));
    }
    let src = g.codec();
    let dst = TupleCodec::new(g.domain, pi.target_arity)?;
    // index into g is linear in the new coordinates
    let mut weight = vec![0usize; pi.target_arity];
    for (j, &i) in pi.image.iter().enumerate() {
        weight[i] += src.weight(j);
    }
    let k = g.domain;
    let n = pi.target_arity;
    let mut digits = vec![0usize; n];
    let mut offset = 0usize;
    let mut values = Vec::with_capacity(dst.size());
    for _ in 0..dst.size() {
        values.push(g.values[offset]);
        // odometer increment, last coordinate fastest
        for i in (0..n).rev() {
            digits[i] += 1;
            offset += weight[i];
            if digits[i] < k {
                break;
            }
            digits[i] = 0;
            offset -= weight[i] * k;
        }
    }
    Ok(FunctionTable::from_values_unchecked(n, k, g.target, values))
}

/// An element of the minion of integer linear forms `c_0 x_0 + .. + c_{n-1} x_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearForm {
    pub coeffs: Vec<i64>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<i64>) -> Self {
        LinearForm { coeffs }
    }

    pub fn arity(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, x: &[usize]) -> i64 {
        self.coeffs.iter().zip(x).map(|(&c, &v)| c * v as i64).sum()
    }

    pub fn abs_sum(&self) -> i64 {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    pub fn sum(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("form serialization")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| invalid_argument(format!("malformed linear form JSON: {e}")))
    }
}

/// `c'_i = sum of c_j over j with pi(j) = i`.
pub fn linear_minor(f: &LinearForm, pi: &MinorMap) -> Result<LinearForm> {
    if pi.source_arity() != f.arity() {
        return Err(invalid_argument(format!(
            "minor map has source arity {}, form has arity {}",
            pi.source_arity(),
            f.arity()
        )));
    }
    let mut coeffs = vec![0; pi.target_arity];
    for (j, &i) in pi.image.iter().enumerate() {
        coeffs[i] += f.coeffs[j];
    }
    Ok(LinearForm { coeffs })
}

/// Membership in `Z_{<=N}`: `sum |c_i| <= N` and `sum c_i` odd.
pub fn is_in_z_leq_n(f: &LinearForm, n: i64) -> Result<bool> {
    if n < 1 || n % 2 == 0 {
        return Err(invalid_parameter(format!(
            "N must be odd and positive, got {n}"
        )));
    }
    Ok(f.abs_sum() <= n && f.sum().rem_euclid(2) == 1)
}

/// Coordinates on which `f` actually depends, ascending.
pub fn essential_coordinates(f: &FunctionTable) -> Vec<usize> {
    let codec = f.codec();
    (0..f.arity)
        .into_par_iter()
        .filter(|&i| {
            let w = codec.weight(i);
            let k = f.domain;
            (0..codec.size())
                .filter(|idx| (idx / w) % k == 0)
                .any(|idx| (1..k).any(|a| f.values[idx + a * w] != f.values[idx]))
        })
        .collect()
}

/// The first edge `(u, v)` of `base^n` (as tuples) whose image is not an edge
/// of `target`.
pub fn polymorphism_violation(
    f: &FunctionTable,
    base: &Graph,
    target: &Graph,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    if f.domain != base.vertex_count() || f.target != target.vertex_count() {
        return Err(invalid_argument(format!(
            "table maps {}^n -> {} but graphs have {} and {} vertices",
            f.domain,
            f.target,
            base.vertex_count(),
            target.vertex_count()
        )));
    }
    let codec = f.codec();
    let found = (0..codec.size()).into_par_iter().find_first(|&ui| {
        let u = codec.decode(ui);
        let fu = f.values[ui];
        let mut bad = false;
        for_each_neighbor_tuple(base, &u, |v| {
            if !bad && !target.has_edge(fu, f.values[codec.encode(v)]) {
                bad = true;
            }
        });
        bad
    });
    Ok(found.map(|ui| {
        let u = codec.decode(ui);
        let mut witness = None;
        for_each_neighbor_tuple(base, &u, |v| {
            if witness.is_none() && !target.has_edge(f.values[ui], f.values[codec.encode(v)]) {
                witness = Some(v.to_vec());
            }
        });
        (u, witness.expect("violation recorded"))
    }))
}

/// Whether `f` is a homomorphism `base^n -> target`.
pub fn is_polymorphism(f: &FunctionTable, base: &Graph, target: &Graph) -> Result<bool> {
    Ok(polymorphism_violation(f, base, target)?.is_none())
}

/// The vertex map `C_k -> K_3` used by [`remark_function`]: `0,1,0,1,...`
/// up to `k-2`, then `2` at `k-1`.
pub fn remark_base_map(k: usize) -> Result<Vec<usize>> {
    if k < 5 || k % 2 == 0 {
        return Err(invalid_parameter(format!("need odd k > 3, got {k}")));
    }
    Ok((0..k).map(|x| if x == k - 1 { 2 } else { x % 2 }).collect())
}

/// A polymorphism `C_k^n -> K_3` with every coordinate essential: `2` on the
/// all-ones tuple, `h(x_0)` elsewhere.
pub fn remark_function(k: usize, n: usize) -> Result<FunctionTable> {
    let h = remark_base_map(k)?;
    FunctionTable::from_fn(n, k, 3, |x| {
        if x.iter().all(|&v| v == 1) {
            2
        } else {
            h[x[0]]
        }
    })
}

/// `xi(f)(x_0..x_{n-1}) = f(h(x_0), .., h(x_{n-1}))` for a homomorphism
/// `h: source -> via` and a table `f` over `via`.
pub fn pullback(
    f: &FunctionTable,
    source: &Graph,
    via: &Graph,
    h: &[usize],
) -> Result<FunctionTable> {
    if f.domain != via.vertex_count() {
        return Err(invalid_argument(format!(
            "table domain {} does not match the intermediate graph ({} vertices)",
            f.domain,
            via.vertex_count()
        )));
    }
    if !graph::is_homomorphism(source, via, h).map_err(|e| invalid_argument(e.to_string()))? {
        return Err(invalid_argument("pullback map is not a homomorphism"));
    }
    let inner = f.codec();
    let mut image = vec![0; f.arity];
    FunctionTable::from_fn(f.arity, source.vertex_count(), f.target, |x| {
        for (slot, &v) in image.iter_mut().zip(x) {
            *slot = h[v];
        }
        f.values[inner.encode(&image)]
    })
}

/// Whether `f` satisfies the minor identity `f(lhs) = f(rhs)`.
pub fn check_identity(f: &FunctionTable, lhs: &MinorMap, rhs: &MinorMap) -> Result<bool> {
    if lhs.target_arity() != rhs.target_arity() {
        return Err(invalid_argument(
            "identity sides use different variable sets",
        ));
    }
    Ok(minor(f, lhs)? == minor(f, rhs)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_cycle};

    fn projection(k: usize, n: usize, i: usize, t: usize, h: &[usize]) -> FunctionTable {
        FunctionTable::from_fn(n, k, t, |x| h[x[i]]).unwrap()
    }

    #[test]
    fn table_validation() {
        assert!(FunctionTable::new(2, 3, 3, vec![0; 8]).is_err());
        assert!(FunctionTable::new(1, 3, 3, vec![0, 1, 3]).is_err());
        let f = FunctionTable::new(1, 3, 3, vec![0, 1, 2]).unwrap();
        assert_eq!(
            f.to_json(),
            r#"{"arity":1,"domain":3,"target":3,"values":[0,1,2]}"#
        );
        assert_eq!(FunctionTable::from_json(&f.to_json()).unwrap(), f);
        assert!(
            FunctionTable::from_json(r#"{"arity":1,"domain":3,"target":2,"values":[0,1,2]}"#)
                .is_err()
        );
    }

    #[test]
    fn minor_examples() {
        let g = FunctionTable::from_fn(2, 3, 3, |x| (x[0] + 2 * x[1]) % 3).unwrap();
        assert_eq!(minor(&g, &MinorMap::identity(2)).unwrap(), g);
        let diag = minor(&g, &MinorMap::new(vec![0, 0], 1).unwrap()).unwrap();
        assert_eq!(diag.values(), &[0, 0, 0]);
        let swap = minor(&g, &MinorMap::new(vec![1, 0], 2).unwrap()).unwrap();
        assert_eq!(swap.eval(&[1, 0]), g.eval(&[0, 1]));
        let dummy = minor(&g, &MinorMap::new(vec![2, 0], 3).unwrap()).unwrap();
        assert_eq!(dummy.eval(&[1, 2, 2]), g.eval(&[2, 1]));
        assert!(minor(&g, &MinorMap::identity(3)).is_err());
        assert!(MinorMap::new(vec![0, 3], 3).is_err());
    }

    #[test]
    fn linear_minors() {
        let f = LinearForm::new(vec![1, 1]);
        let collapse = MinorMap::new(vec![0, 0], 1).unwrap();
        assert_eq!(linear_minor(&f, &collapse).unwrap().coeffs, vec![2]);
        let g = LinearForm::new(vec![1, -1]);
        assert_eq!(linear_minor(&g, &collapse).unwrap().coeffs, vec![0]);
        let fresh = MinorMap::new(vec![0, 2], 3).unwrap();
        assert_eq!(linear_minor(&f, &fresh).unwrap().coeffs, vec![1, 0, 1]);
    }

    #[test]
    fn z_membership() {
        assert!(is_in_z_leq_n(&LinearForm::new(vec![1, -1, 1]), 3).unwrap());
        assert!(!is_in_z_leq_n(&LinearForm::new(vec![1, 1]), 3).unwrap());
        assert!(!is_in_z_leq_n(&LinearForm::new(vec![2, 1, 0]), 1).unwrap());
        assert!(!is_in_z_leq_n(&LinearForm::new(vec![-1, -1, 0]), 3).unwrap());
        assert!(is_in_z_leq_n(&LinearForm::new(vec![-1, 0]), 1).unwrap());
        assert!(is_in_z_leq_n(&LinearForm::new(vec![1]), 2).is_err());
    }

    #[test]
    fn essential() {
        let id3: Vec<usize> = (0..3).collect();
        assert_eq!(
            essential_coordinates(&projection(3, 2, 0, 3, &id3)),
            vec![0]
        );
        assert_eq!(
            essential_coordinates(&remark_function(5, 3).unwrap()),
            vec![0, 1, 2]
        );
        let constant = FunctionTable::new(2, 2, 2, vec![1; 4]).unwrap();
        assert!(essential_coordinates(&constant).is_empty());
    }

    #[test]
    fn remark_function_shape() {
        assert_eq!(remark_base_map(5).unwrap(), vec![0, 1, 0, 1, 2]);
        assert_eq!(remark_base_map(9).unwrap(), vec![0, 1, 0, 1, 0, 1, 0, 1, 2]);
        assert!(remark_function(3, 2).is_err());
        assert!(remark_function(6, 2).is_err());
        let f = remark_function(5, 2).unwrap();
        assert_eq!(f.eval(&[1, 1]), 2);
        assert_eq!(f.eval(&[1, 0]), 1);
        let (c5, k3) = (make_cycle(5).unwrap(), make_complete(3).unwrap());
        assert!(is_polymorphism(&f, &c5, &k3).unwrap());
        assert_eq!(
            essential_coordinates(&remark_function(5, 4).unwrap()),
            vec![0, 1, 2, 3]
        );
        for k in [7, 9, 11] {
            let f = remark_function(k, 2).unwrap();
            assert!(is_polymorphism(&f, &make_cycle(k).unwrap(), &k3).unwrap());
        }
    }

    #[test]
    fn polymorphism_checks() {
        let (c5, k3) = (make_cycle(5).unwrap(), make_complete(3).unwrap());
        let p = projection(5, 2, 0, 3, &[0, 1, 0, 1, 2]);
        assert!(is_polymorphism(&p, &c5, &k3).unwrap());
        let constant = FunctionTable::new(2, 5, 3, vec![0; 25]).unwrap();
        let (u, v) = polymorphism_violation(&constant, &c5, &k3)
            .unwrap()
            .unwrap();
        assert_eq!(u, vec![0, 0]);
        assert_eq!(v, vec![1, 1]);
        assert!(is_polymorphism(&p, &make_cycle(3).unwrap(), &k3).is_err());
    }

    #[test]
    fn pullbacks() {
        let (c3, c9) = (make_cycle(3).unwrap(), make_cycle(9).unwrap());
        let id3: Vec<usize> = (0..3).collect();
        let proj = projection(3, 2, 1, 3, &id3);
        assert_eq!(pullback(&proj, &c3, &c3, &id3).unwrap(), proj);
        let fold = crate::graph::fold_hom(9, 3).unwrap();
        let pulled = pullback(&proj, &c9, &c3, &fold).unwrap();
        assert!(is_polymorphism(&pulled, &c9, &c3).unwrap());
        assert!(pullback(&proj, &c9, &c3, &[0; 9]).is_err());
    }

    #[test]
    fn identities() {
        let f = FunctionTable::from_fn(3, 3, 3, |x| (x[0] + x[1] + x[2]) % 3).unwrap();
        let id = MinorMap::identity(3);
        let rot = MinorMap::new(vec![1, 2, 0], 3).unwrap();
        assert!(check_identity(&f, &id, &id).unwrap());
        assert!(check_identity(&f, &id, &rot).unwrap());
        let g = FunctionTable::from_fn(3, 3, 3, |x| x[0]).unwrap();
        assert!(!check_identity(&g, &id, &rot).unwrap());
        assert!(check_identity(&g, &id, &MinorMap::identity(2)).is_err());
    }
}
