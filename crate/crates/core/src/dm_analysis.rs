//! Codeword distance matrices, grouping of codes by matrix identity, the
//! entrywise partial order on matrices and its chain structure.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::bits::{BinaryWord, MessageWord};
use crate::code::FunctionCorrectingCode;
use crate::drm::{DistanceMatrix, DmMetrics, DmOrdering};
use crate::error::Error;

/// Pairwise Hamming distances between all codewords, in lexicographic message
/// order. For a systematic code entry `(i, j)` splits into the message part
/// plus the parity part.
pub fn codeword_distance_matrix(code: &FunctionCorrectingCode) -> DistanceMatrix {
    let messages: Vec<MessageWord> = MessageWord::all(code.k()).collect();
    let parities = code.parities();
    DistanceMatrix::from_fn(messages.len(), |i, j| {
        messages[i].distance(&messages[j]).expect("uniform message length")
            + parities[i].distance(&parities[j]).expect("uniform parity length")
    })
}

/// Entrywise comparison of two distance matrices.
pub fn compare_dm(a: &DistanceMatrix, b: &DistanceMatrix) -> Result<DmOrdering, Error> {
    a.compare(b)
}

/// Codes sharing one codeword distance matrix.
#[derive(Clone, Debug)]
pub struct DmGroup {
    pub dm: DistanceMatrix,
    /// Counter indices of all member codes, ascending.
    pub member_ids: Vec<u64>,
    /// The member with the lowest counter index.
    pub representative: FunctionCorrectingCode,
    pub metrics: DmMetrics,
}

struct GroupAccum {
    dm: DistanceMatrix,
    min_id: u64,
    representative: FunctionCorrectingCode,
    member_ids: Vec<u64>,
}

/// Partitions codes by exact entrywise equality of their distance matrices.
///
/// Matrices are keyed by a canonical upper-triangle encoding; the hash map
/// falls back to full key comparison on collision, so grouping is exact.
/// Groups come back ordered by their smallest member id and are insensitive to
/// the input order.
pub fn group_by_dm(
    codes: impl IntoIterator<Item = (u64, FunctionCorrectingCode)>,
) -> Vec<DmGroup> {
    let mut index: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut groups: Vec<GroupAccum> = Vec::new();
    for (id, code) in codes {
        let dm = codeword_distance_matrix(&code);
        let key = dm.upper_triangle_key();
        match index.get(&key) {
            Some(&g) => {
                let acc = &mut groups[g];
                acc.member_ids.push(id);
                if id < acc.min_id {
                    acc.min_id = id;
                    acc.representative = code;
                }
            }
            None => {
                index.insert(key, groups.len());
                groups.push(GroupAccum {
                    dm,
                    min_id: id,
                    representative: code,
                    member_ids: vec![id],
                });
            }
        }
    }
    groups.sort_by_key(|g| g.min_id);
    groups
        .into_iter()
        .map(|mut g| {
            g.member_ids.sort_unstable();
            let metrics = g.dm.metrics();
            DmGroup {
                dm: g.dm,
                member_ids: g.member_ids,
                representative: g.representative,
                metrics,
            }
        })
        .collect()
}

/// Counts distinct codeword distance matrices without retaining memberships.
/// Suitable for streaming large enumerations.
pub fn distinct_dm_count(codes: impl IntoIterator<Item = FunctionCorrectingCode>) -> u64 {
    let mut seen: std::collections::HashSet<Vec<u8>> = std::collections::HashSet::new();
    for code in codes {
        seen.insert(codeword_distance_matrix(&code).upper_triangle_key());
    }
    seen.len() as u64
}

/// Closed form for the number of distinct codeword distance matrices over the
/// fixed-parity enumeration: `(N_hat + 2^(2^k - C(k,2) - k - 1)) / 2`.
pub fn distinct_dm_count_formula(k: u8) -> Result<BigUint, Error> {
    let n_hat = crate::enumeration::count_formula(k)?.fixed_zero_parity;
    let k = k as u32;
    let beta = (1u32 << k) - k * (k - 1) / 2 - k - 1;
    Ok((n_hat + BigUint::from(2u32).pow(beta)) / 2u32)
}

/// Closed form `2^a * 3^b + 2^b * (1 + a + b/2)` with `a = C(k,2)` and
/// `b = 2^k - C(k,2) - k - 1`, evaluated exactly as a rational.
///
/// This quantity is reported side by side with the measured chain structure
/// and never asserted against it; see [`chain_decomposition`].
pub fn chain_leader_count_formula(k: u8) -> Result<BigRational, Error> {
    if !(1..=crate::bits::MAX_MESSAGE_LEN).contains(&k) {
        return Err(Error::WordLengthOutOfRange { len: k, min: 1, max: crate::bits::MAX_MESSAGE_LEN });
    }
    let k = k as u32;
    let alpha = k * (k - 1) / 2;
    let beta = (1u32 << k) - alpha - k - 1;
    let term1 = BigInt::from(2u32).pow(alpha) * BigInt::from(3u32).pow(beta);
    // 2^b * (1 + a + b/2) == 2^b * (2 + 2a + b) / 2
    let term2 = BigRational::new(
        BigInt::from(2u32).pow(beta) * BigInt::from(2 + 2 * alpha + beta),
        BigInt::from(2u32),
    );
    Ok(BigRational::from_integer(term1) + term2)
}

/// Chain structure of a family of distance matrices under entrywise order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    /// A minimum-cardinality partition into chains; each chain lists indices
    /// into the input slice in ascending poset order.
    pub chains: Vec<Vec<usize>>,
    /// Indices of the poset-maximal matrices, independent of the partition.
    pub leaders: Vec<usize>,
    /// Number of unordered pairs that are incomparable.
    pub incomparable_pairs: u64,
}

/// Decomposes the entrywise partial order on `dms` into a minimum number of
/// chains (Dilworth-style, via maximum bipartite matching) and reports the
/// poset-maximal elements and the incomparable-pair count.
///
/// Minimality is certified internally: an antichain of the same cardinality as
/// the partition is extracted from the matching and checked.
pub fn chain_decomposition(dms: &[DistanceMatrix]) -> Result<ChainReport, Error> {
    let n = dms.len();
    if n == 0 {
        return Ok(ChainReport { chains: vec![], leaders: vec![], incomparable_pairs: 0 });
    }
    for d in dms {
        if d.order() != dms[0].order() {
            return Err(Error::OrderMismatch { left: dms[0].order(), right: d.order() });
        }
    }

    // strict[i][j]: dms[i] < dms[j] entrywise (transitive by construction)
    let mut strict = vec![false; n * n];
    let mut incomparable_pairs = 0u64;
    for i in 0..n {
        for j in (i + 1)..n {
            match dms[i].compare(&dms[j])? {
                DmOrdering::LessOrEqual => strict[i * n + j] = true,
                DmOrdering::GreaterOrEqual => strict[j * n + i] = true,
                DmOrdering::Incomparable => incomparable_pairs += 1,
                DmOrdering::Equal => {}
            }
        }
    }

    let leaders: Vec<usize> =
        (0..n).filter(|&i| (0..n).all(|j| !strict[i * n + j])).collect();

    // Maximum matching between predecessor and successor copies of each node.
    let mut match_right: Vec<Option<usize>> = vec![None; n];
    let mut match_left: Vec<Option<usize>> = vec![None; n];
    fn augment(
        u: usize,
        n: usize,
        strict: &[bool],
        seen: &mut [bool],
        match_right: &mut [Option<usize>],
        match_left: &mut [Option<usize>],
    ) -> bool {
        for v in 0..n {
            if strict[u * n + v] && !seen[v] {
                seen[v] = true;
                let free = match match_right[v] {
                    None => true,
                    Some(w) => augment(w, n, strict, seen, match_right, match_left),
                };
                if free {
                    match_right[v] = Some(u);
                    match_left[u] = Some(v);
                    return true;
                }
            }
        }
        false
    }
    let mut matching = 0usize;
    for u in 0..n {
        let mut seen = vec![false; n];
        if augment(u, n, &strict, &mut seen, &mut match_right, &mut match_left) {
            matching += 1;
        }
    }

    // Chains: follow successor links from nodes with no matched predecessor.
    let mut chains = Vec::with_capacity(n - matching);
    for (start, matched) in match_right.iter().enumerate() {
        if matched.is_some() {
            continue;
        }
        let mut chain = vec![start];
        let mut cur = start;
        while let Some(next) = match_left[cur] {
            chain.push(next);
            cur = next;
        }
        chains.push(chain);
    }
    debug_assert_eq!(chains.len(), n - matching);

    verify_minimality(n, &strict, &match_right, &match_left, chains.len());

    Ok(ChainReport { chains, leaders, incomparable_pairs })
}

/// Extracts an antichain of size `n - matching` from the matching (via the
/// alternating-path vertex cover) and checks it is pairwise incomparable,
/// certifying that the chain partition is minimum.
fn verify_minimality(
    n: usize,
    strict: &[bool],
    match_right: &[Option<usize>],
    match_left: &[Option<usize>],
    chain_count: usize,
) {
    let mut left_reached = vec![false; n];
    let mut right_reached = vec![false; n];
    let mut queue: Vec<usize> =
        (0..n).filter(|&u| match_left[u].is_none()).collect();
    for &u in &queue {
        left_reached[u] = true;
    }
    while let Some(u) = queue.pop() {
        for v in 0..n {
            if strict[u * n + v] && !right_reached[v] && match_left[u] != Some(v) {
                right_reached[v] = true;
                if let Some(w) = match_right[v] {
                    if !left_reached[w] {
                        left_reached[w] = true;
                        queue.push(w);
                    }
                }
            }
        }
    }
    // Cover = unreachable left vertices + reachable right vertices.
    let antichain: Vec<usize> =
        (0..n).filter(|&i| left_reached[i] && !right_reached[i]).collect();
    assert_eq!(antichain.len(), chain_count, "cover size must equal the matching");
    for (a, &i) in antichain.iter().enumerate() {
        for &j in &antichain[a + 1..] {
            assert!(
                !strict[i * n + j] && !strict[j * n + i],
                "certificate antichain contains a comparable pair"
            );
        }
    }
}

/// Checks that the codeword distance matrix of `code` is unchanged by the four
/// global parity-bit flips and by complementing every weight-1 parity, and
/// that all five variants remain valid codes.
///
/// Only meaningful for `t = 1`, `r = 2` codes; other shapes panic.
pub fn dm_invariance_checks(code: &FunctionCorrectingCode) -> bool {
    assert_eq!(code.r(), 2, "parity-flip invariance is defined for r = 2");
    assert_eq!(code.t(), 1, "parity-flip invariance is defined for t = 1");
    let reference = codeword_distance_matrix(code);
    let mut variants: Vec<FunctionCorrectingCode> =
        (0u32..4).map(|mask| code.with_parity_mask(mask)).collect();
    variants.push(code.with_weight_one_parities_complemented());
    variants
        .iter()
        .all(|v| v.verify_validity().is_valid() && codeword_distance_matrix(v) == reference)
}
