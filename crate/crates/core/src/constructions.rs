//! USO generators and kaleidoscopes.

use crate::analysis::{is_uso, require_uso};
use crate::cube::{DimSet, OutMap};
use crate::error::{Result, UsoError};
use crate::lcp::{is_p_matrix, pcube_outmap};
use crate::linalg::{Rational, RationalMatrix, RationalVector};

/// `φ(V) = V`: every edge points down, sink at `∅`.
pub fn uniform_uso(n: usize) -> Result<OutMap> {
    OutMap::from_fn(n, |v| v)
}

/// Bitstring describing a recursively combed USO.
///
/// Bit 0 is the direction of the edges along dimension `n` (`false` = down,
/// `true` = up); it is followed by the specs of the lower facet and then of the
/// upper facet, each of length `2^(n-1) - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CombedSpec {
    n: usize,
    bits: Vec<bool>,
}

impl CombedSpec {
    pub fn spec_len(n: usize) -> usize {
        (1usize << n) - 1
    }

    pub fn new(n: usize, bits: Vec<bool>) -> Result<Self> {
        if n > 20 {
            return Err(UsoError::MalformedSpec(format!(
                "dimension {n} is too large"
            )));
        }
        if bits.len() != Self::spec_len(n) {
            return Err(UsoError::MalformedSpec(format!(
                "{} bits for dimension {n}, expected {}",
                bits.len(),
                Self::spec_len(n)
            )));
        }
        Ok(CombedSpec { n, bits })
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(UsoError::MalformedSpec(format!(
                    "unexpected character {other:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, bits)
    }

    /// Spec whose bit `k` is bit `k` of `index` (`n ≤ 6`).
    pub fn from_index(n: usize, index: u64) -> Result<Self> {
        let len = Self::spec_len(n);
        if len > 63 || (len < 64 && index >> len != 0) {
            return Err(UsoError::MalformedSpec(format!(
                "index {index} does not fit {len} bits"
            )));
        }
        Self::new(n, (0..len).map(|k| index >> k & 1 == 1).collect())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    fn fill(bits: &[bool], n: usize, offset: u32, table: &mut [u32]) {
        if n == 0 {
            return;
        }
        let half = (1usize << (n - 1)) - 1;
        let up = bits[0];
        let top = 1u32 << (n - 1);
        Self::fill(&bits[1..1 + half], n - 1, offset, table);
        Self::fill(&bits[1 + half..], n - 1, offset + top, table);
        for local in 0..top {
            let lower = (offset + local) as usize;
            let upper = (offset + top + local) as usize;
            if up {
                table[lower] |= top;
            } else {
                table[upper] |= top;
            }
        }
    }
}

/// The recursively combed USO described by `spec`.
pub fn recursively_combed(spec: &CombedSpec) -> OutMap {
    let mut table = vec![0u32; 1 << spec.n];
    CombedSpec::fill(&spec.bits, spec.n, 0, &mut table);
    OutMap::from_table_unchecked(spec.n, table)
}

/// Cube edges given by their lower endpoint and a dimension not in it.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Matching {
    edges: Vec<(DimSet, usize)>,
}

impl Matching {
    /// Edges may be given by either endpoint; they are stored by the lower one.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (DimSet, usize)>) -> Result<Self> {
        let mut covered = vec![false; 1 << n];
        let mut out = Vec::new();
        for (v, dim) in edges {
            if dim == 0 || dim > n || !v.is_subset(DimSet::full(n)) {
                return Err(UsoError::InvalidMatching(format!(
                    "edge ({v}, {dim}) is not an edge of the {n}-cube"
                )));
            }
            let lower = v.without(dim);
            let upper = lower.with(dim);
            for end in [lower, upper] {
                if covered[end.index()] {
                    return Err(UsoError::InvalidMatching(format!(
                        "vertex {end} is covered twice"
                    )));
                }
                covered[end.index()] = true;
            }
            out.push((lower, dim));
        }
        out.sort();
        Ok(Matching { edges: out })
    }

    pub fn edges(&self) -> &[(DimSet, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// The uniform USO with every matched edge reversed.
pub fn matching_reversal(n: usize, m: &Matching) -> Result<OutMap> {
    let mut table: Vec<u32> = (0u32..1 << n).collect();
    for &(v, dim) in m.edges() {
        if dim > n || v.index() >= table.len() {
            return Err(UsoError::InvalidMatching(format!(
                "edge ({v}, {dim}) is outside the {n}-cube"
            )));
        }
        let bit = DimSet::singleton(dim).bits();
        table[v.index()] ^= bit;
        table[v.with(dim).index()] ^= bit;
    }
    let o = OutMap::new(n, table)?;
    debug_assert!(is_uso(&o));
    Ok(o)
}

/// Edges where `o` differs from the uniform USO, if they form a matching.
pub fn matching_from_diff(o: &OutMap) -> Result<Matching> {
    o.require_orientation()?;
    let edges = o.vertices().flat_map(|v| {
        let flipped = o.out(v) ^ v;
        // report each flipped edge once, from its lower endpoint
        (flipped - v)
            .iter()
            .map(move |d| (v, d))
            .collect::<Vec<_>>()
    });
    Matching::new(o.dim(), edges)
}

/// `(V_L, V_H)` for `V ⊆ [2n]`: the lower half and the upper half shifted down by `n`.
pub fn split_lh(v: DimSet, n: usize) -> (DimSet, DimSet) {
    let low = v & DimSet::full(n);
    let high = DimSet((v.bits() >> n) & DimSet::full(n).bits());
    (low, high)
}

/// Inverse of [`split_lh`].
pub fn join_lh(low: DimSet, high: DimSet, n: usize) -> DimSet {
    DimSet(low.bits() | (high.bits() << n))
}

fn check_doubled(psi: &OutMap, phi: &OutMap) -> Result<usize> {
    let n = phi.dim();
    if psi.dim() != 2 * n {
        return Err(UsoError::DimensionMismatch {
            expected: 2 * n,
            got: psi.dim(),
        });
    }
    Ok(n)
}

/// True iff `ψ(V)_L = φ(V_L ⊕ V_H)` for every `V ⊆ [2n]`.
pub fn is_kaleidoscope(psi: &OutMap, phi: &OutMap) -> Result<bool> {
    let n = check_doubled(psi, phi)?;
    Ok(psi.vertices().all(|v| {
        let (low, high) = split_lh(v, n);
        split_lh(psi.out(v), n).0 == phi.out(low ^ high)
    }))
}

/// `ψ(V)_L = φ(V_L ⊕ V_H)`, `ψ(V)_H = V_H`.
pub fn product_kaleidoscope(phi: &OutMap) -> Result<OutMap> {
    require_uso(phi)?;
    let n = phi.dim();
    OutMap::from_fn(2 * n, |v| {
        let (low, high) = split_lh(v, n);
        join_lh(phi.out(low ^ high), high, n)
    })
}

/// First `V ⊆ {n+1, …, 2n}` whose face `[V, V ∪ [n]]` of `ψ′` is a copy of `φ`.
pub fn contains_copy(psi_prime: &OutMap, phi: &OutMap) -> Result<Option<DimSet>> {
    let n = check_doubled(psi_prime, phi)?;
    for high in 0u32..1 << n {
        let base = join_lh(DimSet::EMPTY, DimSet(high), n);
        let hit = (0u32..1 << n).all(|low| {
            let u = base | DimSet(low);
            split_lh(psi_prime.out(u), n).0 == phi.out(DimSet(low))
        });
        if hit {
            return Ok(Some(base));
        }
    }
    Ok(None)
}

/// The block matrix `[[A, A + I], [A - I, A]]`.
pub fn blowup_pmatrix(a: &RationalMatrix) -> Result<RationalMatrix> {
    if !a.is_square() {
        return Err(UsoError::ShapeMismatch(
            "blow-up of a non-square matrix".into(),
        ));
    }
    if !is_p_matrix(a)? {
        return Err(UsoError::NotPMatrix);
    }
    Ok(blowup_unchecked(a))
}

pub(crate) fn blowup_unchecked(a: &RationalMatrix) -> RationalMatrix {
    let n = a.rows();
    let one = Rational::from_integer(1.into());
    let mut m = RationalMatrix::zeros(2 * n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            let x = &a[(r, c)];
            let diag = if r == c {
                one.clone()
            } else {
                Rational::from_integer(0.into())
            };
            m[(r, c)] = x.clone();
            m[(r, c + n)] = x + &diag;
            m[(r + n, c)] = x - &diag;
            m[(r + n, c + n)] = x.clone();
        }
    }
    m
}

/// P-cube kaleidoscope data: the blown-up matrix, the doubled right-hand side and the outmap.
#[derive(Clone, Debug)]
pub struct PcubeKaleidoscope {
    pub matrix: RationalMatrix,
    pub rhs: RationalVector,
    pub outmap: OutMap,
}

/// `M = [[A, A + I], [A - I, A]]`, `q = (b, b)` and the P-cube they generate.
pub fn pcube_kaleidoscope(a: &RationalMatrix, b: &[Rational]) -> Result<PcubeKaleidoscope> {
    // genericity of b for A is checked by building the base cube first
    let phi = pcube_outmap(a, b)?;
    let matrix = blowup_pmatrix(a)?;
    let rhs: RationalVector = b.iter().chain(b.iter()).cloned().collect();
    let outmap = pcube_outmap(&matrix, &rhs)?;
    if !is_kaleidoscope(&outmap, &phi)? {
        return Err(UsoError::Internal(
            "blown-up P-cube is not a kaleidoscope of its base".into(),
        ));
    }
    Ok(PcubeKaleidoscope {
        matrix,
        rhs,
        outmap,
    })
}
