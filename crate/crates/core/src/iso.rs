//! Automorphisms, canonical forms and the USO census.

use std::cmp::Ordering;

use itertools::Itertools;
use rayon::prelude::*;

use crate::analysis::require_uso;
use crate::cube::{Automorphism, AutomorphismTable, DimSet, OutMap, Permutation};
use crate::error::{Result, UsoError};
use crate::lgraph::property_l_holds;

/// Largest dimension for which automorphism sweeps are offered.
pub const AUTOMORPHISM_MAX_DIM: usize = 8;
/// Largest dimension for exhaustive USO enumeration.
pub const ENUMERATION_MAX_DIM: usize = 4;

fn check_automorphism_dim(n: usize) -> Result<()> {
    if n > AUTOMORPHISM_MAX_DIM {
        return Err(UsoError::DimensionTooLarge {
            n,
            cap: AUTOMORPHISM_MAX_DIM,
        });
    }
    Ok(())
}

/// All permutations of `[n]` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    (0..n as u8)
        .permutations(n)
        .map(Permutation::from_zero_based)
}

/// Number of automorphisms of the `n`-cube, `2^n · n!`.
pub fn automorphism_count(n: usize) -> u64 {
    (1..=n as u64).product::<u64>() << n
}

/// Every automorphism of the `n`-cube: flips by index, permutations lexicographic within.
pub fn all_automorphisms(n: usize) -> Result<impl Iterator<Item = Automorphism>> {
    check_automorphism_dim(n)?;
    let perms: Vec<Permutation> = all_permutations(n).collect();
    Ok((0u32..1 << n).flat_map(move |f| {
        perms.clone().into_iter().map(move |perm| Automorphism {
            flip: DimSet(f),
            perm,
        })
    }))
}

/// First automorphism (enumeration order) satisfying `pred`, searched in parallel
/// within each flip.
fn find_first_automorphism<P>(n: usize, pred: P) -> Result<Option<Automorphism>>
where
    P: Fn(&Automorphism) -> bool + Sync,
{
    check_automorphism_dim(n)?;
    let perms: Vec<Permutation> = all_permutations(n).collect();
    for f in 0u32..1 << n {
        let hit = perms.par_iter().find_first(|perm| {
            pred(&Automorphism {
                flip: DimSet(f),
                perm: (*perm).clone(),
            })
        });
        if let Some(perm) = hit {
            return Ok(Some(Automorphism {
                flip: DimSet(f),
                perm: perm.clone(),
            }));
        }
    }
    Ok(None)
}

fn cmp_image_with(t: &AutomorphismTable, table: &[u32], other: &[u32]) -> Ordering {
    for (w, &b) in other.iter().enumerate() {
        match t.image_entry(table, w).cmp(&b) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

/// Lexicographically smallest automorphic image of `o`.
pub fn canonical_form(o: &OutMap) -> Result<OutMap> {
    require_uso(o)?;
    check_automorphism_dim(o.dim())?;
    let table = o.table();
    let mut best = table.to_vec();
    for a in all_automorphisms(o.dim())? {
        let t = AutomorphismTable::new(&a);
        if cmp_image_with(&t, table, &best) == Ordering::Less {
            best = t.apply(o).into_table();
        }
    }
    Ok(OutMap::new(o.dim(), best).expect("automorphic image is an orientation"))
}

/// True iff no automorphic image of `o` is lexicographically smaller.
pub fn is_canonical(o: &OutMap) -> Result<bool> {
    require_uso(o)?;
    check_automorphism_dim(o.dim())?;
    Ok(is_canonical_table(
        o.dim(),
        o.table(),
        &automorphism_tables(o.dim()),
    ))
}

fn is_canonical_table(n: usize, table: &[u32], tables: &[AutomorphismTable]) -> bool {
    // the image of vertex 0 can always be made the sink
    if n > 0 && table[0] != 0 {
        return false;
    }
    tables.iter().all(|t| t.cmp_image(table) != Ordering::Less)
}

fn automorphism_tables(n: usize) -> Vec<AutomorphismTable> {
    all_automorphisms(n)
        .expect("dimension checked by caller")
        .map(|a| AutomorphismTable::new(&a))
        .collect()
}

/// A witness `a` with `apply_automorphism(o1, a) = o2`, or `None`.
pub fn are_isomorphic(o1: &OutMap, o2: &OutMap) -> Result<Option<Automorphism>> {
    if o1.dim() != o2.dim() {
        return Err(UsoError::DimensionMismatch {
            expected: o1.dim(),
            got: o2.dim(),
        });
    }
    require_uso(o1)?;
    require_uso(o2)?;
    let target = o2.table();
    find_first_automorphism(o1.dim(), |a| {
        cmp_image_with(&AutomorphismTable::new(a), o1.table(), target) == Ordering::Equal
    })
}

/// First automorphism whose image of `o` has property L.
pub fn exists_property_l_copy(o: &OutMap) -> Result<Option<Automorphism>> {
    require_uso(o)?;
    find_first_automorphism(o.dim(), |a| {
        property_l_holds(&AutomorphismTable::new(a).apply(o))
    })
}

/// Depth-first enumeration of all USOs, in table order.
///
/// Vertices are assigned in index order; the bits of `φ(V)` for `i ∈ V` are forced by
/// `V \ {i}`, the remaining bits run through submasks in increasing order, and each
/// candidate is checked pairwise against all earlier vertices.
#[derive(Clone, Debug)]
pub struct UsoEnumerator {
    n: usize,
    table: Vec<u32>,
    cursor: Vec<Option<u32>>,
    floor: usize,
    depth: usize,
    done: bool,
}

impl UsoEnumerator {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_prefix(n, &[])
    }

    /// Enumerates the USOs whose table starts with `prefix`.
    pub fn with_prefix(n: usize, prefix: &[u32]) -> Result<Self> {
        if n > ENUMERATION_MAX_DIM {
            return Err(UsoError::DimensionTooLarge {
                n,
                cap: ENUMERATION_MAX_DIM,
            });
        }
        let size = 1usize << n;
        if prefix.len() > size {
            return Err(UsoError::TableLength {
                got: prefix.len(),
                expected: size,
            });
        }
        let mut table = vec![0u32; size];
        let mut done = false;
        for (v, &mask) in prefix.iter().enumerate() {
            if mask >= size as u32 {
                return Err(UsoError::MaskOutOfRange { vertex: v, mask, n });
            }
            table[v] = mask;
            if !Self::consistent(&table, v, mask) {
                done = true;
            }
        }
        Ok(UsoEnumerator {
            n,
            table,
            cursor: vec![None; size],
            floor: prefix.len(),
            depth: prefix.len(),
            done,
        })
    }

    fn consistent(table: &[u32], v: usize, cand: u32) -> bool {
        let v = v as u32;
        (0..v).all(|u| (table[u as usize] ^ cand) & (u ^ v) != 0)
    }

    fn try_advance(&mut self, v: usize) -> bool {
        let full = (1u32 << self.n) - 1;
        let vm = v as u32;
        let comp = !vm & full;
        let mut forced = 0u32;
        let mut rest = vm;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            if self.table[(vm ^ bit) as usize] & bit == 0 {
                forced |= bit;
            }
            rest ^= bit;
        }
        let mut s = match self.cursor[v] {
            None => 0,
            Some(prev) if prev == comp => return false,
            Some(prev) => prev.wrapping_sub(comp) & comp,
        };
        loop {
            let cand = forced | s;
            if Self::consistent(&self.table, v, cand) {
                self.cursor[v] = Some(s);
                self.table[v] = cand;
                return true;
            }
            if s == comp {
                self.cursor[v] = Some(s);
                return false;
            }
            s = s.wrapping_sub(comp) & comp;
        }
    }
}

impl Iterator for UsoEnumerator {
    type Item = OutMap;

    fn next(&mut self) -> Option<OutMap> {
        let size = self.table.len();
        if self.done {
            return None;
        }
        if self.floor == size {
            self.done = true;
            return Some(OutMap::from_table_unchecked(self.n, self.table.clone()));
        }
        loop {
            let v = self.depth;
            if self.try_advance(v) {
                if v + 1 == size {
                    return Some(OutMap::from_table_unchecked(self.n, self.table.clone()));
                }
                self.depth += 1;
                self.cursor[v + 1] = None;
            } else {
                self.cursor[v] = None;
                if v == self.floor {
                    self.done = true;
                    return None;
                }
                self.depth -= 1;
            }
        }
    }
}

/// Every USO of the `n`-cube, `n ≤ 4`.
pub fn enumerate_usos(n: usize) -> Result<UsoEnumerator> {
    UsoEnumerator::new(n)
}

/// Table prefixes of length `depth` that extend to at least one USO, in table order.
pub fn shard_prefixes(n: usize, depth: usize) -> Result<Vec<Vec<u32>>> {
    if n > ENUMERATION_MAX_DIM {
        return Err(UsoError::DimensionTooLarge {
            n,
            cap: ENUMERATION_MAX_DIM,
        });
    }
    let depth = depth.min(1 << n);
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(depth);
    fn rec(n: usize, depth: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == depth {
            if UsoEnumerator::with_prefix(n, prefix)
                .map(|mut e| e.next().is_some())
                .unwrap_or(false)
            {
                out.push(prefix.clone());
            }
            return;
        }
        for mask in 0..1u32 << n {
            prefix.push(mask);
            let v = prefix.len() - 1;
            if UsoEnumerator::consistent(prefix, v, mask) {
                rec(n, depth, prefix, out);
            }
            prefix.pop();
        }
    }
    rec(n, depth, &mut prefix, &mut out);
    Ok(out)
}

/// One isomorphism class of USOs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoClassRecord {
    pub canonical: OutMap,
    pub class_size: u64,
    pub has_property_l_member: bool,
    /// First automorphism whose image of the canonical form has property L.
    pub witness_automorphism: Option<Automorphism>,
}

impl IsoClassRecord {
    /// Class data for a canonical representative.
    pub fn for_canonical(canonical: OutMap) -> Self {
        let n = canonical.dim();
        let mut stabilizer = 0u64;
        let mut witness = None;
        for a in all_automorphisms(n).expect("census dimensions are small") {
            let t = AutomorphismTable::new(&a);
            let table = canonical.table();
            if t.cmp_image(table) == Ordering::Equal {
                stabilizer += 1;
            }
            if witness.is_none() && property_l_holds(&t.apply(&canonical)) {
                witness = Some(a);
            }
        }
        IsoClassRecord {
            class_size: automorphism_count(n) / stabilizer,
            has_property_l_member: witness.is_some(),
            witness_automorphism: witness,
            canonical,
        }
    }
}

/// Class records for the canonical USOs whose table starts with `prefix`.
pub fn census_shard(n: usize, prefix: &[u32]) -> Result<Vec<IsoClassRecord>> {
    let tables = automorphism_tables(n.min(AUTOMORPHISM_MAX_DIM));
    if !prefix.is_empty() && prefix[0] != 0 {
        return Ok(Vec::new());
    }
    let reps: Vec<OutMap> = UsoEnumerator::with_prefix(n, prefix)?
        .filter(|o| is_canonical_table(n, o.table(), &tables))
        .collect();
    Ok(reps
        .into_par_iter()
        .map(IsoClassRecord::for_canonical)
        .collect())
}

/// Default prefix length used to shard the census.
pub fn census_shard_depth(n: usize) -> usize {
    match n {
        0..=2 => 1,
        3 => 2,
        _ => 3,
    }
}

/// Merges shard results into one list sorted by canonical table.
pub fn merge_records(parts: impl IntoIterator<Item = Vec<IsoClassRecord>>) -> Vec<IsoClassRecord> {
    let mut all: Vec<IsoClassRecord> = parts.into_iter().flatten().collect();
    all.sort_by(|a, b| a.canonical.cmp(&b.canonical));
    all.dedup_by(|a, b| a.canonical == b.canonical);
    all
}

/// All isomorphism classes of `n`-cube USOs, sorted by canonical table.
pub fn census(n: usize) -> Result<Vec<IsoClassRecord>> {
    if n > ENUMERATION_MAX_DIM {
        return Err(UsoError::DimensionTooLarge {
            n,
            cap: ENUMERATION_MAX_DIM,
        });
    }
    let shards = shard_prefixes(n, census_shard_depth(n))?;
    let parts = shards
        .par_iter()
        .map(|p| census_shard(n, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(merge_records(parts))
}
