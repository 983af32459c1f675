use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group stored as a full multiplication table over `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    id: usize,
    names: Vec<String>,
}

/// On-disk group format: `{"order": n, "mul": [[..], ..], "names": [..]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Builds a group from a row-major table, checking closure, associativity,
    /// identity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        let mut mul = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has length {}", row.len())));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidGroup(format!("entry {v} out of range in row {i}")));
                }
            }
            mul.extend_from_slice(row);
        }
        let id = (0..n)
            .find(|&e| (0..n).all(|a| mul[e * n + a] == a && mul[a * n + e] == a))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))?;
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            inv[a] = (0..n)
                .find(|&b| mul[a * n + b] == id && mul[b * n + a] == id)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a * n + b];
                for c in 0..n {
                    if mul[ab * n + c] != mul[a * n + mul[b * n + c]] {
                        return Err(Error::InvalidGroup(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let names = match names {
            Some(v) if v.len() == n => v,
            Some(v) => {
                return Err(Error::InvalidGroup(format!("{} names for {n} elements", v.len())))
            }
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        Ok(Self { order: n, mul, inv, id, names })
    }

    pub fn from_json(spec: &GroupJson) -> Result<Self> {
        if spec.mul.len() != spec.order {
            return Err(Error::InvalidGroup(format!(
                "order {} but {} table rows",
                spec.order,
                spec.mul.len()
            )));
        }
        Self::from_table(spec.mul.clone(), spec.names.clone())
    }

    pub fn to_json(&self) -> GroupJson {
        let n = self.order;
        GroupJson {
            order: n,
            mul: (0..n).map(|a| self.mul[a * n..(a + 1) * n].to_vec()).collect(),
            names: Some(self.names.clone()),
        }
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(table, None).expect("cyclic table is a group")
    }

    /// Direct product; element `(a, b)` has index `a * |other| + b` and is
    /// named `"(a,b)"`.
    pub fn product(&self, other: &FiniteGroup) -> Self {
        let (n, m) = (self.order, other.order);
        let idx = |a: usize, b: usize| a * m + b;
        let mut table = vec![vec![0; n * m]; n * m];
        for a1 in 0..n {
            for b1 in 0..m {
                for a2 in 0..n {
                    for b2 in 0..m {
                        table[idx(a1, b1)][idx(a2, b2)] =
                            idx(self.mul(a1, a2), other.mul(b1, b2));
                    }
                }
            }
        }
        let names = (0..n)
            .flat_map(|a| (0..m).map(move |b| (a, b)))
            .map(|(a, b)| format!("({},{})", self.names[a], other.names[b]))
            .collect();
        Self::from_table(table, Some(names)).expect("product of groups is a group")
    }

    /// Closure of `gens` under `mul`, with elements listed in BFS order from
    /// `id`. Returns the group table and the concrete elements.
    pub fn generate<T, F>(gens: &[T], id: T, mul: F) -> (Self, Vec<T>)
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elems = vec![id];
        let mut index: HashMap<T, usize> = HashMap::new();
        index.insert(elems[0].clone(), 0);
        let mut frontier = 0;
        while frontier < elems.len() {
            let x = elems[frontier].clone();
            frontier += 1;
            for g in gens {
                let y = mul(&x, g);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                }
            }
        }
        let n = elems.len();
        let table = (0..n)
            .map(|a| (0..n).map(|b| index[&mul(&elems[a], &elems[b])]).collect())
            .collect();
        let group = Self::from_table(table, None).expect("closure under an associative law");
        (group, elems)
    }

    /// Symmetric group on `k` letters, generated by a transposition and a cycle.
    pub fn symmetric(k: usize) -> Self {
        assert!(k >= 1);
        let id: Vec<usize> = (0..k).collect();
        let mut gens = Vec::new();
        if k >= 2 {
            let mut t = id.clone();
            t.swap(0, 1);
            gens.push(t);
            gens.push((0..k).map(|i| (i + 1) % k).collect());
        }
        let compose = |p: &Vec<usize>, q: &Vec<usize>| q.iter().map(|&i| p[i]).collect::<Vec<_>>();
        Self::generate(&gens, id, compose).0
    }

    /// Dihedral group of order `2k`.
    pub fn dihedral(k: usize) -> Self {
        assert!(k >= 1);
        let n = 2 * k;
        // element (s, r) = s*k + r represents x^s y^r with y x = x y^{-1}
        let mut table = vec![vec![0; n]; n];
        for s1 in 0..2 {
            for r1 in 0..k {
                for s2 in 0..2 {
                    for r2 in 0..k {
                        let r = if s2 == 1 { (k - r1 % k) % k + r2 } else { r1 + r2 } % k;
                        table[s1 * k + r1][s2 * k + r2] = ((s1 + s2) % 2) * k + r;
                    }
                }
            }
        }
        Self::from_table(table, None).expect("dihedral table is a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.id
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `a b a^{-1}`
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inv(a))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.order {
            return Err(Error::InvalidGroup("wrong number of names".into()));
        }
        self.names = names;
        Ok(self)
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let mut mark = vec![false; self.order];
        for &e in elems {
            mark[e] = true;
        }
        mark[self.id]
            && elems.iter().all(|&a| elems.iter().all(|&b| mark[self.mul(a, self.inv(b))]))
    }

    pub fn is_normal(&self, elems: &[usize]) -> bool {
        let mut mark = vec![false; self.order];
        for &e in elems {
            mark[e] = true;
        }
        self.is_subgroup(elems)
            && self.elements().all(|g| elems.iter().all(|&h| mark[self.conj(g, h)]))
    }

    /// Subgroup on the listed elements, with the inclusion homomorphism.
    pub fn subgroup(self: &Arc<Self>, elems: &[usize]) -> Result<(Arc<FiniteGroup>, GroupHom)> {
        let mut elems: Vec<usize> = elems.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if !self.is_subgroup(&elems) {
            return Err(Error::InvalidGroup("elements do not form a subgroup".into()));
        }
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let table = elems
            .iter()
            .map(|&a| elems.iter().map(|&b| pos[&self.mul(a, b)]).collect())
            .collect();
        let names = elems.iter().map(|&e| self.names[e].clone()).collect();
        let sub = Arc::new(FiniteGroup::from_table(table, Some(names))?);
        let inc = GroupHom::new(sub.clone(), self.clone(), elems)?;
        Ok((sub, inc))
    }

    /// Quotient by a normal subgroup, with the projection. Cosets are numbered
    /// by their smallest element.
    pub fn quotient(self: &Arc<Self>, normal: &[usize]) -> Result<(Arc<FiniteGroup>, GroupHom)> {
        if !self.is_normal(normal) {
            return Err(Error::InvalidGroup("quotient by a non-normal subset".into()));
        }
        let mut coset = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in self.elements() {
            if coset[g] == usize::MAX {
                let c = reps.len();
                reps.push(g);
                for &h in normal {
                    coset[self.mul(g, h)] = c;
                }
            }
        }
        let k = reps.len();
        let table = (0..k)
            .map(|a| (0..k).map(|b| coset[self.mul(reps[a], reps[b])]).collect())
            .collect();
        let names = reps.iter().map(|&r| format!("[{}]", self.names[r])).collect();
        let q = Arc::new(FiniteGroup::from_table(table, Some(names))?);
        let proj = GroupHom::new(self.clone(), q.clone(), coset)?;
        Ok((q, proj))
    }

    /// Index of a tuple in row-major order (first entry most significant).
    pub fn tuple_index(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &g| acc * self.order + g)
    }

    pub fn tuple_at(&self, mut index: usize, len: usize) -> Vec<usize> {
        let mut out = vec![0; len];
        for slot in out.iter_mut().rev() {
            *slot = index % self.order;
            index /= self.order;
        }
        out
    }
}

/// A homomorphism between table-given groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub source: Arc<FiniteGroup>,
    pub target: Arc<FiniteGroup>,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() || map.iter().any(|&v| v >= target.order()) {
            return Err(Error::NotHomomorphism("map table has the wrong shape".into()));
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::NotHomomorphism(format!(
                        "f({}*{}) != f({})*f({})",
                        source.name(a),
                        source.name(b),
                        source.name(a),
                        source.name(b)
                    )));
                }
            }
        }
        Ok(Self { source, target, map })
    }

    pub fn identity(g: &Arc<FiniteGroup>) -> Self {
        Self { source: g.clone(), target: g.clone(), map: g.elements().collect() }
    }

    pub fn trivial(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>) -> Self {
        Self {
            source: source.clone(),
            target: target.clone(),
            map: vec![target.identity(); source.order()],
        }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    pub fn kernel(&self) -> Vec<usize> {
        self.source.elements().filter(|&a| self.map[a] == self.target.identity()).collect()
    }

    pub fn image(&self) -> Vec<usize> {
        let mut v = self.map.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn compose(&self, after: &GroupHom) -> Result<GroupHom> {
        if *self.target != *after.source {
            return Err(Error::NotHomomorphism("composition of incompatible maps".into()));
        }
        Ok(GroupHom {
            source: self.source.clone(),
            target: after.target.clone(),
            map: self.map.iter().map(|&a| after.map[a]).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_associative_table() {
        // a loop that is not a group
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_table(t, None).is_err());
    }

    #[test]
    fn small_groups_have_expected_orders() {
        assert_eq!(FiniteGroup::symmetric(3).order(), 6);
        assert_eq!(FiniteGroup::symmetric(4).order(), 24);
        assert_eq!(FiniteGroup::dihedral(4).order(), 8);
        assert!(!FiniteGroup::dihedral(4).is_abelian());
        let z2 = FiniteGroup::cyclic(2);
        let k = z2.product(&z2);
        assert_eq!(k.order(), 4);
        assert_eq!(k.name(1), "(0,1)");
        assert!(k.is_abelian());
    }

    #[test]
    fn quotient_and_subgroup() {
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        let (q, proj) = z4.quotient(&[0, 2]).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj.kernel(), vec![0, 2]);
        let (sub, inc) = z4.subgroup(&[0, 2]).unwrap();
        assert_eq!(sub.order(), 2);
        assert_eq!(inc.image(), vec![0, 2]);
        assert!(z4.quotient(&[0, 1]).is_err());
    }

    #[test]
    fn hom_validation() {
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        assert!(GroupHom::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).is_ok());
        assert!(GroupHom::new(z4, z2, vec![0, 1, 1, 0]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = FiniteGroup::symmetric(3);
        let back = FiniteGroup::from_json(&g.to_json()).unwrap();
        assert_eq!(g, back);
    }
}
