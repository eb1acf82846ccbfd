//! Vertices, outmaps, faces and cube automorphisms.
//!
//! Dimension `i` (1-based) lives in bit `i - 1` of a [`DimSet`]; a vertex is
//! stored at the table index equal to its bitmask.

use std::fmt;

use crate::error::{Result, UsoError};

/// Largest ambient dimension an [`OutMap`] may have.
pub const MAX_DIM: usize = 30;

/// A subset of the dimensions `[n]`, used for vertices and outmap values.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DimSet(pub u32);

impl DimSet {
    pub const EMPTY: DimSet = DimSet(0);

    /// `[n] = {1, …, n}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 32);
        if n >= 32 {
            DimSet(u32::MAX)
        } else {
            DimSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(dim: usize) -> Self {
        debug_assert!((1..=32).contains(&dim));
        DimSet(1 << (dim - 1))
    }

    pub fn from_dims<I: IntoIterator<Item = usize>>(dims: I) -> Self {
        dims.into_iter()
            .fold(DimSet::EMPTY, |acc, d| acc | DimSet::singleton(d))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn contains(self, dim: usize) -> bool {
        (1..=32).contains(&dim) && self.0 & (1 << (dim - 1)) != 0
    }

    #[inline]
    pub fn with(self, dim: usize) -> Self {
        self | DimSet::singleton(dim)
    }

    #[inline]
    pub fn without(self, dim: usize) -> Self {
        DimSet(self.0 & !(1 << (dim - 1)))
    }

    #[inline]
    pub fn toggle(self, dim: usize) -> Self {
        self ^ DimSet::singleton(dim)
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_subset(self, other: DimSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Complement within `[n]`.
    #[inline]
    pub fn complement(self, n: usize) -> Self {
        DimSet(!self.0 & DimSet::full(n).0)
    }

    /// Dimensions in increasing order, 1-based.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(tz + 1)
            }
        })
    }

    /// Smallest dimension in the set.
    pub fn min_dim(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Spreads the low `carrier.len()` bits of `self` onto the positions of `carrier`.
    pub fn deposit(self, carrier: DimSet) -> DimSet {
        let mut out = 0u32;
        for (k, dim) in carrier.iter().enumerate() {
            if self.0 & (1 << k) != 0 {
                out |= 1 << (dim - 1);
            }
        }
        DimSet(out)
    }

    /// Inverse of [`DimSet::deposit`]: packs the bits of `self` at `carrier` positions.
    pub fn extract(self, carrier: DimSet) -> DimSet {
        let mut out = 0u32;
        for (k, dim) in carrier.iter().enumerate() {
            if self.contains(dim) {
                out |= 1 << k;
            }
        }
        DimSet(out)
    }
}

impl std::ops::BitXor for DimSet {
    type Output = DimSet;
    fn bitxor(self, rhs: DimSet) -> DimSet {
        DimSet(self.0 ^ rhs.0)
    }
}

impl std::ops::BitOr for DimSet {
    type Output = DimSet;
    fn bitor(self, rhs: DimSet) -> DimSet {
        DimSet(self.0 | rhs.0)
    }
}

impl std::ops::BitAnd for DimSet {
    type Output = DimSet;
    fn bitand(self, rhs: DimSet) -> DimSet {
        DimSet(self.0 & rhs.0)
    }
}

impl std::ops::Sub for DimSet {
    type Output = DimSet;
    fn sub(self, rhs: DimSet) -> DimSet {
        DimSet(self.0 & !rhs.0)
    }
}

impl fmt::Display for DimSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, d) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for DimSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeDirection {
    Outgoing,
    Incoming,
}

/// An interval `[lower, upper]` of the cube.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    pub lower: DimSet,
    pub upper: DimSet,
}

impl Face {
    pub fn new(lower: DimSet, upper: DimSet) -> Result<Self> {
        if !lower.is_subset(upper) {
            return Err(UsoError::MalformedFace { lower, upper });
        }
        Ok(Face { lower, upper })
    }

    pub fn whole(n: usize) -> Self {
        Face {
            lower: DimSet::EMPTY,
            upper: DimSet::full(n),
        }
    }

    pub fn carrier(&self) -> DimSet {
        self.upper - self.lower
    }

    pub fn dim(&self) -> usize {
        self.carrier().len()
    }

    pub fn contains_vertex(&self, v: DimSet) -> bool {
        self.lower.is_subset(v) && v.is_subset(self.upper)
    }

    /// All vertices of the face, ordered by their packed carrier coordinates.
    pub fn vertices(&self) -> impl Iterator<Item = DimSet> + '_ {
        let carrier = self.carrier();
        let lower = self.lower;
        (0u32..(1u32 << carrier.len())).map(move |k| lower | DimSet(k).deposit(carrier))
    }

    fn check_in(&self, n: usize) -> Result<()> {
        if !self.lower.is_subset(self.upper) || !self.upper.is_subset(DimSet::full(n)) {
            return Err(UsoError::MalformedFace {
                lower: self.lower,
                upper: self.upper,
            });
        }
        Ok(())
    }
}

/// Every face `[U, W]` of the `n`-cube, each exactly once.
pub fn all_faces(n: usize) -> impl Iterator<Item = Face> {
    // each dimension is fixed-out, free, or fixed-in: 3^n faces
    let full = DimSet::full(n).0;
    (0..=full).flat_map(move |upper| {
        let upper = DimSet(upper);
        submasks(upper).map(move |lower| Face { lower, upper })
    })
}

/// Subsets of `set` in increasing numeric order.
pub fn submasks(set: DimSet) -> impl Iterator<Item = DimSet> {
    let s = set.0;
    let mut cur = Some(0u32);
    std::iter::from_fn(move || {
        let c = cur?;
        let next = (c.wrapping_sub(s)) & s;
        cur = (next != 0).then_some(next);
        Some(DimSet(c))
    })
}

/// A permutation of `[n]`; `images[k]` is the 0-based image of dimension `k + 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u8).collect(),
        }
    }

    /// Builds from 1-based images: `images[k]` is π(k + 1).
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in images {
            if img == 0 || img > n || seen[img - 1] {
                return Err(UsoError::InvalidPermutation(format!(
                    "{images:?} is not a bijection on [{n}]"
                )));
            }
            seen[img - 1] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|&i| (i - 1) as u8).collect(),
        })
    }

    pub(crate) fn from_zero_based(images: Vec<u8>) -> Self {
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// π(dim), both 1-based.
    pub fn image(&self, dim: usize) -> usize {
        self.images[dim - 1] as usize + 1
    }

    /// 1-based images π(1), …, π(n).
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(k, &i)| k == i as usize)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.images.len()];
        for (k, &i) in self.images.iter().enumerate() {
            inv[i as usize] = k as u8;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other
                .images
                .iter()
                .map(|&i| self.images[i as usize])
                .collect(),
        }
    }

    pub fn apply(&self, set: DimSet) -> DimSet {
        let mut out = 0u32;
        let mut bits = set.0;
        while bits != 0 {
            let k = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            out |= 1 << self.images[k];
        }
        DimSet(out)
    }

    /// Lookup table of `apply` over all subsets of `[n]`.
    pub(crate) fn mask_table(&self) -> Vec<u32> {
        let n = self.images.len();
        let mut table = vec![0u32; 1 << n];
        for k in 0..n {
            let bit = 1usize << k;
            let img = 1u32 << self.images[k];
            for m in bit..(1usize << n) {
                if m & bit != 0 {
                    table[m] |= img;
                }
            }
        }
        table
    }
}

/// A cube automorphism `h(V) = π(V ⊕ F)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Automorphism {
    pub flip: DimSet,
    pub perm: Permutation,
}

impl Automorphism {
    pub fn identity(n: usize) -> Self {
        Automorphism {
            flip: DimSet::EMPTY,
            perm: Permutation::identity(n),
        }
    }

    pub fn new(flip: DimSet, perm: Permutation) -> Result<Self> {
        if !flip.is_subset(DimSet::full(perm.len())) {
            return Err(UsoError::InvalidPermutation(format!(
                "flip set {flip} exceeds [{}]",
                perm.len()
            )));
        }
        Ok(Automorphism { flip, perm })
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// The vertex map `h`.
    pub fn map_vertex(&self, v: DimSet) -> DimSet {
        self.perm.apply(v ^ self.flip)
    }

    /// Applying `self` and then `next` is the same as applying the returned automorphism.
    pub fn then(&self, next: &Automorphism) -> Automorphism {
        // π2(π1(V ⊕ F1) ⊕ F2) = π2π1(V ⊕ F1 ⊕ π1⁻¹(F2))
        Automorphism {
            flip: self.flip ^ self.perm.inverse().apply(next.flip),
            perm: next.perm.compose(&self.perm),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        // h⁻¹(W) = π⁻¹(W) ⊕ F = π⁻¹(W ⊕ π(F))
        Automorphism {
            flip: self.perm.apply(self.flip),
            perm: self.perm.inverse(),
        }
    }

    /// Reconstructs `(F, π)` from the images of `∅` and of the singletons.
    pub fn from_vertex_images(empty_image: DimSet, singleton_images: &[DimSet]) -> Result<Self> {
        let n = singleton_images.len();
        let mut images = Vec::with_capacity(n);
        for &img in singleton_images {
            let d = img ^ empty_image;
            if d.len() != 1 {
                return Err(UsoError::InvalidPermutation(format!(
                    "images {empty_image} and {img} are not adjacent"
                )));
            }
            images.push(d.min_dim().unwrap());
        }
        let perm = Permutation::from_images(&images)?;
        let flip = perm.inverse().apply(empty_image);
        Automorphism::new(flip, perm)
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<String> = self.perm.images().iter().map(|i| i.to_string()).collect();
        write!(f, "flip {} perm [{}]", self.flip, imgs.join(","))
    }
}

/// Explicit outmap table of an `n`-cube orientation.
///
/// The table need not describe a consistent orientation; see [`OutMap::is_orientation`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OutMap {
    n: usize,
    table: Vec<u32>,
}

impl fmt::Debug for OutMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OutMap(n={}, {:?})", self.n, self.table)
    }
}

impl OutMap {
    pub fn new(n: usize, table: Vec<u32>) -> Result<Self> {
        if n > MAX_DIM {
            return Err(UsoError::DimensionTooLarge { n, cap: MAX_DIM });
        }
        let expected = 1usize << n;
        if table.len() != expected {
            return Err(UsoError::TableLength {
                got: table.len(),
                expected,
            });
        }
        let full = DimSet::full(n).0;
        if let Some((vertex, &mask)) = table.iter().enumerate().find(|(_, &m)| m & !full != 0) {
            return Err(UsoError::MaskOutOfRange { vertex, mask, n });
        }
        Ok(OutMap { n, table })
    }

    /// Builds the table by evaluating `f` at every vertex.
    pub fn from_fn(n: usize, mut f: impl FnMut(DimSet) -> DimSet) -> Result<Self> {
        if n > MAX_DIM {
            return Err(UsoError::DimensionTooLarge { n, cap: MAX_DIM });
        }
        let table = (0..1u32 << n).map(|v| f(DimSet(v)).0).collect();
        OutMap::new(n, table)
    }

    pub(crate) fn from_table_unchecked(n: usize, table: Vec<u32>) -> Self {
        debug_assert_eq!(table.len(), 1 << n);
        OutMap { n, table }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn num_vertices(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn into_table(self) -> Vec<u32> {
        self.table
    }

    #[inline]
    pub fn out(&self, v: DimSet) -> DimSet {
        DimSet(self.table[v.index()])
    }

    pub fn vertices(&self) -> impl Iterator<Item = DimSet> {
        (0..self.table.len() as u32).map(DimSet)
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if dim == 0 || dim > self.n {
            return Err(UsoError::DimensionOutOfRange { dim, n: self.n });
        }
        Ok(())
    }

    /// True iff every edge is claimed outgoing by exactly one endpoint.
    pub fn is_orientation(&self) -> bool {
        self.first_inconsistent_edge().is_none()
    }

    /// First `(V, i)` with `i ∉ V` whose edge is claimed by both or neither endpoint.
    pub fn first_inconsistent_edge(&self) -> Option<(DimSet, usize)> {
        for v in 0..self.table.len() {
            for k in 0..self.n {
                let bit = 1u32 << k;
                if v as u32 & bit != 0 {
                    continue;
                }
                let up = v | bit as usize;
                if (self.table[v] & bit == 0) == (self.table[up] & bit == 0) {
                    return Some((DimSet(v as u32), k + 1));
                }
            }
        }
        None
    }

    pub fn require_orientation(&self) -> Result<()> {
        match self.first_inconsistent_edge() {
            None => Ok(()),
            Some((vertex, dim)) => Err(UsoError::NotAnOrientation { vertex, dim }),
        }
    }

    pub fn edge_direction(&self, v: DimSet, dim: usize) -> Result<EdgeDirection> {
        self.check_dim(dim)?;
        Ok(if self.out(v).contains(dim) {
            EdgeDirection::Outgoing
        } else {
            EdgeDirection::Incoming
        })
    }

    /// True iff the orientation has the directed edge `from → to` (adjacent vertices).
    pub fn has_edge(&self, from: DimSet, to: DimSet) -> bool {
        let d = from ^ to;
        d.len() == 1 && (self.out(from) & d) == d
    }

    /// `O ⊕ R`: reverse every edge along the dimensions in `r`.
    pub fn reverse(&self, r: DimSet) -> OutMap {
        let r = r & DimSet::full(self.n);
        OutMap::from_table_unchecked(self.n, self.table.iter().map(|&m| m ^ r.0).collect())
    }

    /// Mirror image along `f`: `ψ′(V) = ψ(V ⊕ F)`.
    pub fn mirror(&self, f: DimSet) -> OutMap {
        let f = (f & DimSet::full(self.n)).0 as usize;
        OutMap::from_table_unchecked(
            self.n,
            (0..self.table.len()).map(|v| self.table[v ^ f]).collect(),
        )
    }

    /// Renames dimensions: vertex `π(V)` receives outmap `π(φ(V))`.
    pub fn permute_dims(&self, perm: &Permutation) -> Result<OutMap> {
        if perm.len() != self.n {
            return Err(UsoError::InvalidPermutation(format!(
                "permutation of [{}] applied to a {}-cube",
                perm.len(),
                self.n
            )));
        }
        let masks = perm.mask_table();
        let mut table = vec![0u32; self.table.len()];
        for (v, &m) in self.table.iter().enumerate() {
            table[masks[v] as usize] = masks[m as usize];
        }
        Ok(OutMap::from_table_unchecked(self.n, table))
    }

    /// Image under `h(V) = π(V ⊕ F)`: equals `permute_dims(mirror(F), π)`.
    pub fn apply_automorphism(&self, a: &Automorphism) -> Result<OutMap> {
        if a.dim() != self.n {
            return Err(UsoError::DimensionMismatch {
                expected: self.n,
                got: a.dim(),
            });
        }
        Ok(AutomorphismTable::new(a).apply(self))
    }

    /// The face as a `|carrier|`-cube, carrier dimensions renamed to `1..=k` in increasing order.
    pub fn face_subcube(&self, face: &Face) -> Result<OutMap> {
        face.check_in(self.n)?;
        let carrier = face.carrier();
        let k = carrier.len();
        let table = (0u32..1 << k)
            .map(|local| {
                let v = face.lower | DimSet(local).deposit(carrier);
                (self.out(v) & carrier).extract(carrier).0
            })
            .collect();
        Ok(OutMap::from_table_unchecked(k, table))
    }
}

/// Precomputed vertex and mask maps for applying one automorphism to many tables.
#[derive(Clone, Debug)]
pub struct AutomorphismTable {
    /// `source[W] = π⁻¹(W) ⊕ F`
    source: Vec<u32>,
    /// `mask[S] = π(S)`
    mask: Vec<u32>,
}

impl AutomorphismTable {
    pub fn new(a: &Automorphism) -> Self {
        let mask = a.perm.mask_table();
        let inv = a.perm.inverse().mask_table();
        let source = inv.iter().map(|&m| m ^ a.flip.0).collect();
        AutomorphismTable { source, mask }
    }

    /// Image table entry at vertex index `w`.
    #[inline]
    pub fn image_entry(&self, table: &[u32], w: usize) -> u32 {
        self.mask[table[self.source[w] as usize] as usize]
    }

    pub fn apply(&self, o: &OutMap) -> OutMap {
        let table = (0..o.table.len())
            .map(|w| self.image_entry(&o.table, w))
            .collect();
        OutMap::from_table_unchecked(o.n, table)
    }

    /// Compares the image of `table` with `table` itself lexicographically, stopping early.
    #[inline]
    pub fn cmp_image(&self, table: &[u32]) -> std::cmp::Ordering {
        for w in 0..table.len() {
            let img = self.image_entry(table, w);
            match img.cmp(&table[w]) {
                std::cmp::Ordering::Equal => continue,
                other => return other,
            }
        }
        std::cmp::Ordering::Equal
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn ds(dims: &[usize]) -> DimSet {
        DimSet::from_dims(dims.iter().copied())
    }

    #[test]
    fn dimset_bit_convention() {
        assert_eq!(ds(&[1]).bits(), 1);
        assert_eq!(ds(&[3]).bits(), 4);
        assert_eq!(ds(&[1, 2, 4, 6]).bits(), 0b101011);
        assert_eq!(ds(&[2, 5]).iter().collect::<Vec<_>>(), vec![2, 5]);
        assert_eq!(ds(&[1, 2]).complement(3), ds(&[3]));
        assert_eq!(format!("{}", ds(&[1, 3])), "{1,3}");
        assert_eq!(format!("{}", DimSet::EMPTY), "{}");
    }

    #[test]
    fn deposit_extract_roundtrip() {
        let carrier = ds(&[2, 4, 5]);
        for k in 0..8u32 {
            let v = DimSet(k).deposit(carrier);
            assert!(v.is_subset(carrier));
            assert_eq!(v.extract(carrier), DimSet(k));
        }
    }

    #[test]
    fn submasks_and_faces() {
        let subs: Vec<u32> = submasks(DimSet(0b101)).map(|s| s.0).collect();
        assert_eq!(subs, vec![0, 1, 4, 5]);
        assert_eq!(all_faces(3).count(), 27);
        assert_eq!(all_faces(0).count(), 1);
    }

    #[test]
    fn orientation_examples() {
        assert!(eye().is_orientation());
        assert!(!OutMap::new(1, vec![0, 0]).unwrap().is_orientation());
        assert!(bow().is_orientation());
        assert!(twin_peak().is_orientation());
        assert!(cycle().is_orientation());
    }

    #[test]
    fn table_validation() {
        assert_eq!(
            OutMap::new(2, vec![0, 1, 2]),
            Err(UsoError::TableLength {
                got: 3,
                expected: 4
            })
        );
        assert!(matches!(
            OutMap::new(1, vec![0, 2]),
            Err(UsoError::MaskOutOfRange { vertex: 1, .. })
        ));
        let zero = OutMap::new(0, vec![0]).unwrap();
        assert!(zero.is_orientation());
    }

    #[test]
    fn edge_direction_examples() {
        assert_eq!(
            eye().edge_direction(DimSet::EMPTY, 1).unwrap(),
            EdgeDirection::Incoming
        );
        assert_eq!(
            eye().edge_direction(ds(&[1]), 1).unwrap(),
            EdgeDirection::Outgoing
        );
        assert_eq!(
            bow().edge_direction(ds(&[1]), 2).unwrap(),
            EdgeDirection::Outgoing
        );
        assert!(matches!(
            eye().edge_direction(DimSet::EMPTY, 3),
            Err(UsoError::DimensionOutOfRange { dim: 3, n: 2 })
        ));
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(twin_peak().reverse(ds(&[2])), cycle());
        assert_eq!(eye().reverse(DimSet::EMPTY), eye());
        let source = eye().reverse(ds(&[1, 2]));
        assert_eq!(source.table(), &[3, 2, 1, 0]);
        assert!(source.is_orientation());
        assert_eq!(source.reverse(ds(&[1, 2])), eye());
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(eye().mirror(DimSet::EMPTY), eye());
        let m = eye().mirror(ds(&[1]));
        assert_eq!(m.out(DimSet::EMPTY), ds(&[1]));
        assert_eq!(m.mirror(ds(&[1])), eye());
        assert!(m.is_orientation());
    }

    #[test]
    fn permute_examples() {
        let swap = Permutation::from_images(&[2, 1]).unwrap();
        assert_eq!(eye().permute_dims(&swap).unwrap(), eye());
        assert_eq!(
            bow().permute_dims(&Permutation::identity(2)).unwrap(),
            bow()
        );
        assert!(Permutation::from_images(&[1, 1]).is_err());
        assert!(Permutation::from_images(&[0, 1]).is_err());
        assert!(bow().permute_dims(&Permutation::identity(3)).is_err());
    }

    #[test]
    fn automorphism_matches_mirror_then_permute() {
        let perm = Permutation::from_images(&[2, 1]).unwrap();
        for f in 0..4 {
            let a = Automorphism::new(DimSet(f), perm.clone()).unwrap();
            let direct = bow().apply_automorphism(&a).unwrap();
            let staged = bow().mirror(DimSet(f)).permute_dims(&perm).unwrap();
            assert_eq!(direct, staged);
        }
        assert_eq!(
            twin_peak()
                .apply_automorphism(
                    &Automorphism::new(ds(&[1, 2]), Permutation::identity(2)).unwrap()
                )
                .unwrap(),
            twin_peak()
        );
    }

    #[test]
    fn automorphism_composition_exhaustive_n2() {
        let perms = [
            Permutation::identity(2),
            Permutation::from_images(&[2, 1]).unwrap(),
        ];
        let autos: Vec<Automorphism> = (0..4)
            .flat_map(|f| {
                perms
                    .iter()
                    .map(move |p| Automorphism::new(DimSet(f), p.clone()).unwrap())
            })
            .collect();
        for o in [eye(), bow(), twin_peak(), cycle()] {
            for a1 in &autos {
                for a2 in &autos {
                    let staged = o
                        .apply_automorphism(a1)
                        .unwrap()
                        .apply_automorphism(a2)
                        .unwrap();
                    let composed = o.apply_automorphism(&a1.then(a2)).unwrap();
                    assert_eq!(staged, composed, "{a1} then {a2}");
                }
                let back = o
                    .apply_automorphism(a1)
                    .unwrap()
                    .apply_automorphism(&a1.inverse())
                    .unwrap();
                assert_eq!(back, o);
            }
        }
    }

    #[test]
    fn automorphism_edges_map_to_edges() {
        let a = Automorphism::new(ds(&[2]), Permutation::from_images(&[2, 1]).unwrap()).unwrap();
        let o = bow();
        let img = o.apply_automorphism(&a).unwrap();
        for v in o.vertices() {
            for d in 1..=2 {
                let u = v.toggle(d);
                assert_eq!(
                    o.has_edge(v, u),
                    img.has_edge(a.map_vertex(v), a.map_vertex(u))
                );
            }
        }
    }

    #[test]
    fn face_subcube_examples() {
        assert_eq!(bow().face_subcube(&Face::whole(2)).unwrap(), bow());
        let point = bow()
            .face_subcube(&Face::new(ds(&[1]), ds(&[1])).unwrap())
            .unwrap();
        assert_eq!(point.dim(), 0);
        assert_eq!(point.table(), &[0]);
        // upper edge of the bow along dimension 1: {2} -> {1,2}? φ({2}) = {2}, so {1,2} -> {2}
        let edge = bow()
            .face_subcube(&Face::new(ds(&[2]), ds(&[1, 2])).unwrap())
            .unwrap();
        assert_eq!(edge.table(), &[0, 1]);
        assert!(Face::new(ds(&[1]), ds(&[2])).is_err());
        assert!(bow()
            .face_subcube(&Face {
                lower: DimSet::EMPTY,
                upper: ds(&[3])
            })
            .is_err());
    }

    #[test]
    fn automorphism_from_vertex_images() {
        let a =
            Automorphism::new(ds(&[1, 3]), Permutation::from_images(&[3, 1, 2]).unwrap()).unwrap();
        let singles: Vec<DimSet> = (1..=3)
            .map(|i| a.map_vertex(DimSet::singleton(i)))
            .collect();
        let b = Automorphism::from_vertex_images(a.map_vertex(DimSet::EMPTY), &singles).unwrap();
        assert_eq!(a, b);
    }
}
