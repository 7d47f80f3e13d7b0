//! Finite groups as validated multiplication tables.
//!
//! Elements are indices `0..order` with the identity always at index 0.
//! Constructors cover the families used throughout: cyclic, dihedral,
//! symmetric, the Klein four group, the quaternion group, direct products,
//! and arbitrary user supplied tables (fully validated, including exhaustive
//! associativity).

use crate::{Error, Result};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::sync::Arc;

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    /// Flat row-major table: `table[a * order + b]` is the product `a · b`.
    table: Vec<usize>,
    inv: Vec<usize>,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Validates and wraps a multiplication table. Checks shape, the identity
    /// at index 0, the Latin square property, inverses, and associativity on
    /// every triple.
    pub fn from_table(name: &str, rows: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<FiniteGroup> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::BadTable("empty table".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::BadTable("table is not square".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for r in rows {
            for &v in r {
                if v >= n {
                    return Err(Error::BadTable(format!("entry {v} out of range")));
                }
                table.push(v);
            }
        }
        // identity at index 0
        for j in 0..n {
            if table[j] != j || table[j * n] != j {
                return Err(Error::BadTable("index 0 is not an identity".into()));
            }
        }
        // Latin square
        for i in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                let r = table[i * n + j];
                let c = table[j * n + i];
                if seen_row[r] || seen_col[c] {
                    return Err(Error::BadTable(format!(
                        "row or column {i} repeats a value"
                    )));
                }
                seen_row[r] = true;
                seen_col[c] = true;
            }
        }
        // associativity, exhaustively
        for i in 0..n {
            for j in 0..n {
                let ij = table[i * n + j];
                for k in 0..n {
                    if table[ij * n + k] != table[i * n + table[j * n + k]] {
                        return Err(Error::NotAssociative { i, j, k });
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; n];
        for i in 0..n {
            for j in 0..n {
                if table[i * n + j] == 0 {
                    inv[i] = j;
                }
            }
        }
        if inv.iter().any(|&v| v == usize::MAX) {
            return Err(Error::BadTable("missing inverse".into()));
        }
        let labels = match labels {
            Some(l) => {
                if l.len() != n {
                    return Err(Error::BadTable("label count mismatch".into()));
                }
                l
            }
            None => (0..n).map(default_label).collect(),
        };
        Ok(FiniteGroup {
            name: name.to_string(),
            order: n,
            table,
            inv,
            labels,
        })
    }

    /// Cyclic group of order `n`, generator at index 1 (for `n > 1`).
    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1);
        let rows: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let labels = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "t".to_string(),
                _ => format!("t{i}"),
            })
            .collect();
        FiniteGroup::from_table(&format!("cyclic:{n}"), &rows, Some(labels))
            .expect("cyclic table is a group")
    }

    /// Dihedral group of order `2n` (symmetries of the regular `n`-gon),
    /// `n >= 1`. Indices `0..n` are rotations `r^i`, indices `n..2n` are the
    /// reflections `r^i s`, with `s r s = r^{-1}`.
    pub fn dihedral(n: usize) -> FiniteGroup {
        assert!(n >= 1);
        let m = 2 * n;
        let idx = |rot: usize, flip: bool| if flip { n + rot } else { rot };
        let mut rows = vec![vec![0usize; m]; m];
        for i in 0..m {
            let (ri, fi) = (i % n, i >= n);
            for j in 0..m {
                let (rj, fj) = (j % n, j >= n);
                // (r^a s^e)(r^b s^f) = r^(a + b or a - b) s^(e xor f)
                let rot = if fi { (ri + n - rj % n) % n } else { (ri + rj) % n };
                rows[i][j] = idx(rot, fi ^ fj);
            }
        }
        let labels = (0..m)
            .map(|i| {
                let (r, f) = (i % n, i >= n);
                match (r, f) {
                    (0, false) => "e".to_string(),
                    (0, true) => "s".to_string(),
                    (1, false) => "r".to_string(),
                    (r, false) => format!("r{r}"),
                    (1, true) => "rs".to_string(),
                    (r, true) => format!("r{r}s"),
                }
            })
            .collect();
        FiniteGroup::from_table(&format!("dihedral:{n}"), &rows, Some(labels))
            .expect("dihedral table is a group")
    }

    /// Symmetric group on `n` letters, elements enumerated as permutations in
    /// lexicographic one-line order (identity first). Product `p · q` acts by
    /// `x -> p[q[x]]`.
    pub fn symmetric(n: usize) -> FiniteGroup {
        assert!((1..=6).contains(&n), "symmetric group limited to n <= 6");
        let perms = permutations(n);
        let index_of = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let m = perms.len();
        let mut rows = vec![vec![0usize; m]; m];
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                let prod: Vec<usize> = (0..n).map(|x| p[q[x]]).collect();
                rows[i][j] = index_of(&prod);
            }
        }
        let labels = perms
            .iter()
            .map(|p| {
                let digits: String = p.iter().map(|d| d.to_string()).collect();
                format!("p{digits}")
            })
            .collect();
        FiniteGroup::from_table(&format!("sym:{n}"), &rows, Some(labels))
            .expect("symmetric table is a group")
    }

    /// Klein four group.
    pub fn klein4() -> FiniteGroup {
        let rows = vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ];
        let labels = ["e", "a", "b", "ab"].map(String::from).to_vec();
        FiniteGroup::from_table("klein4", &rows, Some(labels)).expect("klein table is a group")
    }

    /// Quaternion group of order 8.
    pub fn quaternion8() -> FiniteGroup {
        // element = axis * 2 + sign, axes 0:1, 1:i, 2:j, 3:k
        let enc = |axis: usize, neg: bool| axis * 2 + usize::from(neg);
        let mut rows = vec![vec![0usize; 8]; 8];
        for a in 0..4 {
            for sa in 0..2 {
                for b in 0..4 {
                    for sb in 0..2 {
                        let (axis, neg) = quat_axis_mul(a, b);
                        let sign = (sa == 1) ^ (sb == 1) ^ neg;
                        rows[enc(a, sa == 1)][enc(b, sb == 1)] = enc(axis, sign);
                    }
                }
            }
        }
        let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .map(String::from)
            .to_vec();
        FiniteGroup::from_table("quaternion8", &rows, Some(labels))
            .expect("quaternion table is a group")
    }

    /// Direct product, elements indexed as `a * |H| + b`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
        let n = g.order * h.order;
        let mut rows = vec![vec![0usize; n]; n];
        for a1 in 0..g.order {
            for b1 in 0..h.order {
                for a2 in 0..g.order {
                    for b2 in 0..h.order {
                        rows[a1 * h.order + b1][a2 * h.order + b2] =
                            g.mul(a1, a2) * h.order + h.mul(b1, b2);
                    }
                }
            }
        }
        let labels = (0..g.order)
            .flat_map(|a| {
                (0..h.order).map(move |b| (a, b))
            })
            .map(|(a, b)| format!("({},{})", g.labels[a], h.labels[b]))
            .collect();
        FiniteGroup::from_table(&format!("({}) x ({})", g.name, h.name), &rows, Some(labels))
            .expect("product table is a group")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Product of two elements.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Order of an element.
    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Sign of the left translation permutation `h -> g · h`.
    pub fn cayley_sign(&self, g: usize) -> i8 {
        let ord = self.element_order(g);
        // the translation is |G|/ord disjoint cycles of length ord
        let transpositions = (ord - 1) * (self.order / ord);
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Whether every left translation is an even permutation.
    pub fn is_oriented(&self) -> bool {
        (0..self.order).all(|g| self.cayley_sign(g) == 1)
    }

    /// Closure of a generating set (always contains the identity); sorted.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Result<Vec<usize>> {
        for &g in gens {
            if g >= self.order {
                return Err(Error::Invalid(format!("generator {g} out of range")));
            }
        }
        let mut in_set = vec![false; self.order];
        in_set[0] = true;
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !in_set[y] {
                    in_set[y] = true;
                    frontier.push(y);
                }
            }
        }
        Ok((0..self.order).filter(|&i| in_set[i]).collect())
    }

    /// Checks that a sorted element list is a subgroup (identity present,
    /// closed under products; inverses follow by finiteness).
    pub fn check_subgroup(&self, els: &[usize]) -> Result<()> {
        if els.first() != Some(&0) {
            return Err(Error::Invalid(
                "subgroup must contain the identity (index 0)".into(),
            ));
        }
        for &a in els {
            if a >= self.order {
                return Err(Error::Invalid(format!("element {a} out of range")));
            }
            for &b in els {
                if els.binary_search(&self.mul(a, b)).is_err() {
                    return Err(Error::NotSubgroup { a, b });
                }
            }
        }
        Ok(())
    }

    /// Realizes a subgroup as a standalone group, returning it together with
    /// the embedding: entry `i` is the parent index of the subgroup's element
    /// `i`. Elements are sorted, so the identity stays at index 0 and labels
    /// carry over.
    pub fn subgroup_group(&self, elements: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        let mut els: Vec<usize> = elements.to_vec();
        els.sort_unstable();
        els.dedup();
        self.check_subgroup(&els)?;
        let pos = |g: usize| {
            els.binary_search(&g)
                .expect("subgroup closure was just checked")
        };
        let rows: Vec<Vec<usize>> = els
            .iter()
            .map(|&a| els.iter().map(|&b| pos(self.mul(a, b))).collect())
            .collect();
        let labels: Vec<String> = els.iter().map(|&g| self.label(g).to_string()).collect();
        let name = format!("sub{}-of-{}", els.len(), self.name);
        let sub = FiniteGroup::from_table(&name, &rows, Some(labels))?;
        Ok((sub, els))
    }
}

fn default_label(i: usize) -> String {
    if i == 0 {
        "e".to_string()
    } else {
        format!("x{i}")
    }
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    fn rec(
        n: usize,
        depth: usize,
        current: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == n {
            out.push(current.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                current[depth] = v;
                rec(n, depth + 1, current, used, out);
                used[v] = false;
            }
        }
    }
    rec(n, 0, &mut current, &mut used, &mut out);
    out
}

/// Quaternion axis product: returns (axis, negated) for axes 0:1, 1:i, 2:j, 3:k.
fn quat_axis_mul(a: usize, b: usize) -> (usize, bool) {
    match (a, b) {
        (0, x) => (x, false),
        (x, 0) => (x, false),
        (x, y) if x == y => (0, true),
        (1, 2) => (3, false),
        (2, 3) => (1, false),
        (3, 1) => (2, false),
        (2, 1) => (3, true),
        (3, 2) => (1, true),
        (1, 3) => (2, true),
        _ => unreachable!(),
    }
}

/// Left cosets of a subgroup, with canonical representatives (the smallest
/// element of each coset; the subgroup itself is represented by the
/// identity).
#[derive(Debug, Clone)]
pub struct CosetSystem {
    group: Arc<FiniteGroup>,
    subgroup: Vec<usize>,
    sub_pos: Vec<Option<usize>>,
    reps: Vec<usize>,
    coset_of: Vec<usize>,
}

impl CosetSystem {
    /// Builds the left coset decomposition `G = ⊔ c_i H` for a validated
    /// subgroup element list.
    pub fn new(group: Arc<FiniteGroup>, mut subgroup: Vec<usize>) -> Result<CosetSystem> {
        subgroup.sort_unstable();
        subgroup.dedup();
        group.check_subgroup(&subgroup)?;
        let n = group.order();
        let mut sub_pos = vec![None; n];
        for (i, &h) in subgroup.iter().enumerate() {
            sub_pos[h] = Some(i);
        }
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(g);
            for &h in &subgroup {
                coset_of[group.mul(g, h)] = idx;
            }
        }
        Ok(CosetSystem {
            group,
            subgroup,
            sub_pos,
            reps,
            coset_of,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn subgroup_elements(&self) -> &[usize] {
        &self.subgroup
    }

    /// Index `[G : H]`.
    pub fn index(&self) -> usize {
        self.reps.len()
    }

    /// The canonical transversal (representative of the subgroup is the
    /// identity).
    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    /// Canonical representative of `g`'s left coset.
    pub fn rep(&self, g: usize) -> usize {
        self.reps[self.coset_of[g]]
    }

    /// Writes `g = rep · h` and returns `(rep, position of h in the subgroup
    /// element list)`.
    pub fn decompose(&self, g: usize) -> (usize, usize) {
        let rep = self.rep(g);
        let h = self.group.mul(self.group.inv(rep), g);
        (rep, self.sub_pos[h].expect("coset arithmetic closed"))
    }

    /// Position of a subgroup element in the subgroup list, if it belongs.
    pub fn subgroup_position(&self, h: usize) -> Option<usize> {
        self.sub_pos[h]
    }
}

#[derive(Serialize, Deserialize)]
struct GroupDto {
    name: String,
    order: usize,
    table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl Serialize for FiniteGroup {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = (0..self.order)
            .map(|i| self.table[i * self.order..(i + 1) * self.order].to_vec())
            .collect();
        GroupDto {
            name: self.name.clone(),
            order: self.order,
            table: rows,
            labels: Some(self.labels.clone()),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for FiniteGroup {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let dto = GroupDto::deserialize(de)?;
        if dto.order != dto.table.len() {
            return Err(serde::de::Error::custom("order does not match table size"));
        }
        FiniteGroup::from_table(&dto.name, &dto.table, dto.labels)
            .map_err(|e| serde::de::Error::custom(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_is_what_it_says() {
        let g = FiniteGroup::cyclic(6);
        assert_eq!(g.order(), 6);
        assert_eq!(g.element_order(1), 6);
        assert_eq!(g.mul(4, 5), 3);
        assert_eq!(g.inv(2), 4);
    }

    #[test]
    fn dihedral_relations() {
        let n = 4;
        let g = FiniteGroup::dihedral(n);
        assert_eq!(g.order(), 8);
        let r = 1;
        let s = n;
        assert_eq!(g.element_order(r), n);
        assert_eq!(g.element_order(s), 2);
        // s r s = r^{-1}
        assert_eq!(g.mul(g.mul(s, r), s), g.inv(r));
    }

    #[test]
    fn symmetric_group_basics() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        let orders: Vec<usize> = (0..6).map(|i| s3.element_order(i)).collect();
        let twos = orders.iter().filter(|&&o| o == 2).count();
        let threes = orders.iter().filter(|&&o| o == 3).count();
        assert_eq!((twos, threes), (3, 2));
        let s4 = FiniteGroup::symmetric(4);
        assert_eq!(s4.order(), 24);
    }

    #[test]
    fn quaternion_structure() {
        let q = FiniteGroup::quaternion8();
        // i * j = k
        assert_eq!(q.mul(2, 4), 6);
        // j * i = -k
        assert_eq!(q.mul(4, 2), 7);
        // i^2 = -1
        assert_eq!(q.mul(2, 2), 1);
        let mut orders: Vec<usize> = (0..8).map(|i| q.element_order(i)).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2, 4, 4, 4, 4, 4, 4]);
    }

    #[test]
    fn product_of_coprime_cyclics_has_full_order_element() {
        let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(3));
        assert_eq!(g.order(), 6);
        assert!((0..6).any(|i| g.element_order(i) == 6));
    }

    #[test]
    fn orientation_catalog() {
        assert!(!FiniteGroup::cyclic(2).is_oriented());
        assert!(FiniteGroup::cyclic(3).is_oriented());
        assert!(!FiniteGroup::cyclic(4).is_oriented());
        assert!(FiniteGroup::cyclic(5).is_oriented());
        assert!(!FiniteGroup::cyclic(6).is_oriented());
        assert!(FiniteGroup::klein4().is_oriented());
        assert!(!FiniteGroup::symmetric(3).is_oriented());
        assert!(FiniteGroup::dihedral(4).is_oriented());
        assert!(FiniteGroup::quaternion8().is_oriented());
    }

    #[test]
    fn bad_tables_are_rejected() {
        // identity not at 0
        let rows = vec![vec![1, 0], vec![0, 1]];
        assert!(FiniteGroup::from_table("bad", &rows, None).is_err());
        // non-associative latin square (order 5 loop)
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 3, 4, 0, 1],
            vec![3, 4, 1, 2, 0],
            vec![4, 2, 0, 1, 3],
        ];
        assert!(matches!(
            FiniteGroup::from_table("loop", &rows, None),
            Err(Error::NotAssociative { .. })
        ));
    }

    #[test]
    fn coset_system_decomposes() {
        let g = Arc::new(FiniteGroup::cyclic(6));
        let h = g.subgroup_closure(&[2]).unwrap();
        assert_eq!(h, vec![0, 2, 4]);
        let cs = CosetSystem::new(g.clone(), h).unwrap();
        assert_eq!(cs.index(), 2);
        for x in 0..6 {
            let (rep, hpos) = cs.decompose(x);
            let h_el = cs.subgroup_elements()[hpos];
            assert_eq!(g.mul(rep, h_el), x);
        }
    }

    #[test]
    fn subgroup_check_catches_non_closure() {
        let g = FiniteGroup::cyclic(4);
        assert!(matches!(
            g.check_subgroup(&[0, 1]),
            Err(Error::NotSubgroup { .. })
        ));
        assert!(g.check_subgroup(&[0, 2]).is_ok());
    }

    #[test]
    fn serde_round_trip() {
        let g = FiniteGroup::dihedral(3);
        let text = serde_json::to_string(&g).unwrap();
        let back: FiniteGroup = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
    }
}
