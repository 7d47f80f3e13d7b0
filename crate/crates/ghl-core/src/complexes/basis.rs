//! Signed tag bases for the simplicial and alternating chain complexes of a
//! finite group.
//!
//! A [`SignedBasis`] presents, degree by degree, a free `Z`-basis of "tags"
//! carrying a signed left action of the group and an equivariant boundary.
//! Two implementations are provided:
//!
//! * [`BarBasis`]: degree `n` is the set of `(n+1)`-tuples of group elements
//!   (the basis of the bar resolution), with the diagonal action and the
//!   alternating drop-one-entry boundary. All signs are `+1`.
//! * [`ExtBasis`]: degree `n` is the set of strictly increasing
//!   `(n+1)`-subsets of the group (the basis of the `(n+1)`-st exterior power
//!   of the group ring), acted on by translate-then-sort with the sorting
//!   parity as sign, and with the alternating drop-one-entry boundary.

use std::sync::Arc;

use crate::groups::FiniteGroup;
use crate::{Error, Result};

/// A degree-graded free `Z`-basis with a signed `G`-action and a boundary.
///
/// Tags in degree `n` are identified with the integers `0..dim(n)`. The
/// action and the boundary are exact on tags; all coefficient arithmetic
/// happens later, in the orbit models built on top of a basis.
pub trait SignedBasis {
    /// The acting group.
    fn group(&self) -> &Arc<FiniteGroup>;

    /// Short name used in diagnostics.
    fn name(&self) -> &'static str;

    /// Number of tags in degree `n`, or `None` when the count overflows
    /// `usize`.
    fn dim(&self, n: usize) -> Option<usize>;

    /// Applies the group element `g` to a degree-`n` tag, returning the image
    /// tag and its sign.
    fn act(&self, n: usize, g: usize, tag: usize) -> (usize, i64);

    /// Boundary of a degree-`n` tag as a signed combination of degree-`n-1`
    /// tags. Empty in degree zero. Repeated tags may occur and must be summed
    /// by the caller.
    fn boundary(&self, n: usize, tag: usize) -> Vec<(usize, i64)>;
}

/// The simplicial basis: degree `n` is all `(n+1)`-tuples of group elements.
///
/// Tuples are encoded big-endian in base `|G|` with the leading entry most
/// significant, so the unique tuple in each diagonal orbit whose leading
/// entry is the identity is also the smallest tag of its orbit.
#[derive(Debug, Clone)]
pub struct BarBasis {
    group: Arc<FiniteGroup>,
}

impl BarBasis {
    pub fn new(group: Arc<FiniteGroup>) -> BarBasis {
        BarBasis { group }
    }

    /// Decodes a degree-`n` tag into its `n+1` entries.
    pub fn decode(&self, n: usize, mut tag: usize) -> Vec<usize> {
        let order = self.group.order();
        let mut digits = vec![0usize; n + 1];
        for slot in (0..=n).rev() {
            digits[slot] = tag % order;
            tag /= order;
        }
        digits
    }

    /// Encodes entries back into a tag.
    pub fn encode(&self, entries: &[usize]) -> usize {
        let order = self.group.order();
        entries.iter().fold(0usize, |acc, &e| acc * order + e)
    }
}

impl SignedBasis for BarBasis {
    fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    fn name(&self) -> &'static str {
        "bar"
    }

    fn dim(&self, n: usize) -> Option<usize> {
        let order = self.group.order();
        (0..=n).try_fold(1usize, |acc, _| acc.checked_mul(order))
    }

    fn act(&self, n: usize, g: usize, tag: usize) -> (usize, i64) {
        let mut entries = self.decode(n, tag);
        for e in entries.iter_mut() {
            *e = self.group.mul(g, *e);
        }
        (self.encode(&entries), 1)
    }

    fn boundary(&self, n: usize, tag: usize) -> Vec<(usize, i64)> {
        if n == 0 {
            return Vec::new();
        }
        let entries = self.decode(n, tag);
        let mut out = Vec::with_capacity(n + 1);
        let mut sign = 1i64;
        for drop in 0..=n {
            let mut face = Vec::with_capacity(n);
            face.extend_from_slice(&entries[..drop]);
            face.extend_from_slice(&entries[drop + 1..]);
            out.push((self.encode(&face), sign));
            sign = -sign;
        }
        out
    }
}

/// The alternating basis: degree `n` is all strictly increasing
/// `(n+1)`-subsets of the group elements, listed in lexicographic order.
///
/// Degrees `n >= |G|` are empty. The action translates every entry and
/// re-sorts, with the permutation parity as sign; translation by a group
/// element is injective, so no repeats arise.
#[derive(Debug, Clone)]
pub struct ExtBasis {
    group: Arc<FiniteGroup>,
    tags: Vec<Vec<Vec<usize>>>,
}

impl ExtBasis {
    pub fn new(group: Arc<FiniteGroup>) -> Result<ExtBasis> {
        let order = group.order();
        if order > 20 {
            return Err(Error::Invalid(format!(
                "alternating basis for a group of order {order} would need 2^{order} tags"
            )));
        }
        let mut tags = Vec::with_capacity(order);
        for n in 0..order {
            tags.push(combinations(order, n + 1));
        }
        Ok(ExtBasis { group, tags })
    }

    /// The increasing element list of a degree-`n` tag.
    pub fn entries(&self, n: usize, tag: usize) -> &[usize] {
        &self.tags[n][tag]
    }

    /// Looks up the tag with the given strictly increasing entries.
    pub fn index_of(&self, entries: &[usize]) -> Option<usize> {
        let n = entries.len().checked_sub(1)?;
        self.tags
            .get(n)?
            .binary_search_by(|probe| probe.as_slice().cmp(entries))
            .ok()
    }

    /// Sorts `entries` in place and returns the sign of the sorting
    /// permutation, or `None` if two entries coincide.
    pub fn sort_with_sign(entries: &mut [usize]) -> Option<i64> {
        let mut sign = 1i64;
        for i in 1..entries.len() {
            let mut j = i;
            while j > 0 && entries[j - 1] > entries[j] {
                entries.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
            if j > 0 && entries[j - 1] == entries[j] {
                return None;
            }
        }
        Some(sign)
    }
}

impl SignedBasis for ExtBasis {
    fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    fn name(&self) -> &'static str {
        "ext"
    }

    fn dim(&self, n: usize) -> Option<usize> {
        Some(self.tags.get(n).map_or(0, Vec::len))
    }

    fn act(&self, n: usize, g: usize, tag: usize) -> (usize, i64) {
        let mut entries: Vec<usize> = self.tags[n][tag]
            .iter()
            .map(|&e| self.group.mul(g, e))
            .collect();
        let sign = Self::sort_with_sign(&mut entries)
            .expect("translation by a group element cannot create repeats");
        let idx = self
            .index_of(&entries)
            .expect("sorted translate is a valid tag");
        (idx, sign)
    }

    fn boundary(&self, n: usize, tag: usize) -> Vec<(usize, i64)> {
        if n == 0 {
            return Vec::new();
        }
        let entries = &self.tags[n][tag];
        let mut out = Vec::with_capacity(n + 1);
        let mut sign = 1i64;
        for drop in 0..=n {
            let mut face = Vec::with_capacity(n);
            face.extend_from_slice(&entries[..drop]);
            face.extend_from_slice(&entries[drop + 1..]);
            let idx = self.index_of(&face).expect("subset face is a valid tag");
            out.push((idx, sign));
            sign = -sign;
        }
        out
    }
}

/// All strictly increasing `k`-subsets of `0..order` in lexicographic order.
fn combinations(order: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > order {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // Advance to the next combination in lexicographic order.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + order - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// The orbit decomposition of one degree of a signed basis.
///
/// Reps are the smallest tags of their orbits, listed in increasing order.
/// For every tag the lookup table gives `(rep position, g, sign)` with
/// `g · rep = sign · tag`, and each rep carries its list of stabilizing pairs
/// `(g, sign)` with `g · rep = sign · rep`, the identity excluded.
#[derive(Debug, Clone)]
pub struct Orbits {
    pub reps: Vec<usize>,
    pub rep_of: Vec<(usize, usize, i64)>,
    pub stabilizers: Vec<Vec<(usize, i64)>>,
}

/// Decomposes degree `n` of a basis into group orbits.
///
/// The degree dimension must be known to the basis; callers enforce budgets
/// before asking for a decomposition.
pub fn orbit_decomposition(basis: &dyn SignedBasis, n: usize) -> Orbits {
    let dim = basis
        .dim(n)
        .expect("orbit decomposition requires a representable dimension");
    let order = basis.group().order();
    let identity = basis.group().identity();
    let mut rep_of: Vec<Option<(usize, usize, i64)>> = vec![None; dim];
    let mut reps = Vec::new();
    let mut stabilizers = Vec::new();
    for tag in 0..dim {
        if rep_of[tag].is_some() {
            continue;
        }
        let rep_pos = reps.len();
        reps.push(tag);
        rep_of[tag] = Some((rep_pos, identity, 1));
        let mut stab = Vec::new();
        for g in 0..order {
            if g == identity {
                continue;
            }
            let (image, sign) = basis.act(n, g, tag);
            if image == tag {
                stab.push((g, sign));
            } else if rep_of[image].is_none() {
                rep_of[image] = Some((rep_pos, g, sign));
            }
        }
        stabilizers.push(stab);
    }
    Orbits {
        reps,
        rep_of: rep_of.into_iter().map(|o| o.unwrap()).collect(),
        stabilizers,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bar_codec_round_trips() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let bar = BarBasis::new(g);
        for tag in 0..27 {
            let entries = bar.decode(2, tag);
            assert_eq!(entries.len(), 3);
            assert_eq!(bar.encode(&entries), tag);
        }
        assert_eq!(bar.dim(2), Some(27));
    }

    #[test]
    fn bar_action_is_diagonal_translation() {
        let g = Arc::new(FiniteGroup::cyclic(4));
        let bar = BarBasis::new(g.clone());
        let tag = bar.encode(&[0, 1, 3]);
        let (image, sign) = bar.act(2, 2, tag);
        assert_eq!(sign, 1);
        assert_eq!(bar.decode(2, image), vec![2, 3, 1]);
    }

    #[test]
    fn bar_boundary_alternates_dropped_entries() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let bar = BarBasis::new(g);
        let tag = bar.encode(&[0, 1, 2]);
        let faces = bar.boundary(2, tag);
        assert_eq!(
            faces,
            vec![
                (bar.encode(&[1, 2]), 1),
                (bar.encode(&[0, 2]), -1),
                (bar.encode(&[0, 1]), 1),
            ]
        );
    }

    #[test]
    fn ext_tags_are_lexicographic_subsets() {
        let g = Arc::new(FiniteGroup::cyclic(4));
        let ext = ExtBasis::new(g).unwrap();
        assert_eq!(ext.dim(0), Some(4));
        assert_eq!(ext.dim(1), Some(6));
        assert_eq!(ext.dim(2), Some(4));
        assert_eq!(ext.dim(3), Some(1));
        assert_eq!(ext.dim(4), Some(0));
        assert_eq!(ext.entries(1, 0), &[0, 1]);
        assert_eq!(ext.entries(1, 5), &[2, 3]);
        assert_eq!(ext.index_of(&[1, 3]), Some(4));
    }

    #[test]
    fn ext_action_tracks_sorting_parity() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let ext = ExtBasis::new(g).unwrap();
        // t · {0, 1} = {1, 2}: already sorted, no sign.
        let tag01 = ext.index_of(&[0, 1]).unwrap();
        assert_eq!(ext.act(1, 1, tag01), (ext.index_of(&[1, 2]).unwrap(), 1));
        // t · {1, 2} = {2, 0}: one swap, sign -1.
        let tag12 = ext.index_of(&[1, 2]).unwrap();
        assert_eq!(ext.act(1, 1, tag12), (ext.index_of(&[0, 2]).unwrap(), -1));
    }

    #[test]
    fn ext_boundary_signs() {
        let g = Arc::new(FiniteGroup::cyclic(4));
        let ext = ExtBasis::new(g).unwrap();
        let tag = ext.index_of(&[0, 1, 3]).unwrap();
        let faces = ext.boundary(2, tag);
        assert_eq!(
            faces,
            vec![
                (ext.index_of(&[1, 3]).unwrap(), 1),
                (ext.index_of(&[0, 3]).unwrap(), -1),
                (ext.index_of(&[0, 1]).unwrap(), 1),
            ]
        );
    }

    #[test]
    fn bar_orbits_have_identity_leading_reps() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let bar = BarBasis::new(g.clone());
        let orbits = orbit_decomposition(&bar, 1);
        // Nine tuples fall into three free orbits with reps (e, *).
        assert_eq!(orbits.reps.len(), 3);
        for (pos, &rep) in orbits.reps.iter().enumerate() {
            assert_eq!(bar.decode(1, rep)[0], 0);
            assert_eq!(bar.decode(1, rep)[1], pos);
            assert!(orbits.stabilizers[pos].is_empty());
        }
        for tag in 0..9 {
            let (rep_pos, g_el, sign) = orbits.rep_of[tag];
            let (image, s) = bar.act(1, g_el, orbits.reps[rep_pos]);
            assert_eq!((image, s), (tag, sign));
        }
    }

    #[test]
    fn ext_orbit_stabilizer_sees_signs() {
        // For Z2, the top tag {e, t} is stabilized by t with sign -1.
        let g = Arc::new(FiniteGroup::cyclic(2));
        let ext = ExtBasis::new(g).unwrap();
        let orbits = orbit_decomposition(&ext, 1);
        assert_eq!(orbits.reps, vec![0]);
        assert_eq!(orbits.stabilizers[0], vec![(1, -1)]);
    }

    #[test]
    fn combinations_count_matches_binomial() {
        assert_eq!(combinations(6, 3).len(), 20);
        assert_eq!(combinations(5, 5).len(), 1);
        assert_eq!(combinations(4, 5).len(), 0);
        let c = combinations(5, 2);
        assert!(c.windows(2).all(|w| w[0] < w[1]), "lexicographic order");
    }
}
