//! Counting tables and exactly-uniform sampling of planted mobiles.

use super::enumerate::allowed_child_tuples;
use super::{BlackNode, Flavor, Mobile, MobileError, WhiteNode};
use std::collections::HashMap;
use std::io::{Read, Write};
use std::path::PathBuf;

/// Deterministic 64-bit generator (splitmix64), sufficient for sampling.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `[0, bound)`.
    pub fn below(&mut self, bound: u128) -> u128 {
        assert!(bound > 0);
        // Rejection sampling on 128-bit words keeps exact uniformity.
        loop {
            let hi = self.next_u64() as u128;
            let lo = self.next_u64() as u128;
            let x = (hi << 64) | lo;
            let limit = u128::MAX - (u128::MAX % bound);
            if x < limit {
                return x % bound;
            }
        }
    }
}

/// Dynamic-programming counts of planted mobiles by (root label, black
/// count).
pub struct CountTable {
    flavor: Flavor,
    p: usize,
    counts: HashMap<(i64, usize), u128>,
}

impl CountTable {
    /// Build counts for all root labels up to `max_label` and sizes up to
    /// `max_black`. Memoization fills only reachable states.
    pub fn build(flavor: Flavor, max_label: i64, max_black: usize) -> CountTable {
        let p = flavor.black_degree.expect("counting tables require a fixed black degree");
        let mut t = CountTable { flavor, p, counts: HashMap::new() };
        for label in 1..=max_label {
            for n in 0..=max_black {
                t.count(label, n);
            }
        }
        t
    }

    /// Load from the cache directory when `CARTO_CACHE_DIR` is set (saving
    /// on miss), otherwise build in memory.
    pub fn load_or_build(flavor: Flavor, max_label: i64, max_black: usize) -> CountTable {
        let Some(dir) = std::env::var_os("CARTO_CACHE_DIR") else {
            return CountTable::build(flavor, max_label, max_black);
        };
        let p = flavor.black_degree.expect("counting tables require a fixed black degree");
        let path = PathBuf::from(dir).join(format!(
            "mobile_counts_p{}_d{}_l{}_n{}.bin",
            p, flavor.descending as u8, max_label, max_black
        ));
        if let Some(t) = Self::load(&path, flavor, p) {
            return t;
        }
        let t = CountTable::build(flavor, max_label, max_black);
        let _ = t.save(&path);
        t
    }

    const MAGIC: &'static [u8; 8] = b"CARTOTB1";
    const VERSION: u32 = 1;

    fn save(&self, path: &PathBuf) -> std::io::Result<()> {
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        let mut buf = Vec::new();
        buf.extend_from_slice(Self::MAGIC);
        buf.extend_from_slice(&Self::VERSION.to_le_bytes());
        buf.extend_from_slice(&(self.counts.len() as u64).to_le_bytes());
        let mut entries: Vec<_> = self.counts.iter().collect();
        entries.sort();
        for (&(label, size), &count) in entries {
            buf.extend_from_slice(&label.to_le_bytes());
            buf.extend_from_slice(&(size as u64).to_le_bytes());
            buf.extend_from_slice(&count.to_le_bytes());
        }
        std::fs::File::create(path)?.write_all(&buf)
    }

    fn load(path: &PathBuf, flavor: Flavor, p: usize) -> Option<CountTable> {
        let mut buf = Vec::new();
        std::fs::File::open(path).ok()?.read_to_end(&mut buf).ok()?;
        if buf.len() < 20 || &buf[0..8] != Self::MAGIC {
            return None;
        }
        if u32::from_le_bytes(buf[8..12].try_into().ok()?) != Self::VERSION {
            return None;
        }
        let n = u64::from_le_bytes(buf[12..20].try_into().ok()?) as usize;
        let mut counts = HashMap::with_capacity(n);
        let mut off = 20;
        for _ in 0..n {
            if off + 32 > buf.len() {
                return None;
            }
            let label = i64::from_le_bytes(buf[off..off + 8].try_into().ok()?);
            let size = u64::from_le_bytes(buf[off + 8..off + 16].try_into().ok()?) as usize;
            let count = u128::from_le_bytes(buf[off + 16..off + 32].try_into().ok()?);
            counts.insert((label, size), count);
            off += 32;
        }
        Some(CountTable { flavor, p, counts })
    }

    /// Number of planted floating mobiles with the given root label and
    /// black count.
    pub fn count(&mut self, label: i64, n: usize) -> u128 {
        if label < 1 {
            return 0;
        }
        if n == 0 {
            return 1;
        }
        if let Some(&c) = self.counts.get(&(label, n)) {
            return c;
        }
        let mut total: u128 = 0;
        for tuple in allowed_child_tuples(label, self.p, self.flavor.descending) {
            total += self.tuple_count(&tuple, n - 1, label);
        }
        self.counts.insert((label, n), total);
        total
    }

    /// Sum over subtree-size splits for one black child plus the remaining
    /// sequence at the root.
    fn tuple_count(&mut self, tuple: &[i64], budget: usize, root: i64) -> u128 {
        // counts of (subtrees below `tuple` whites) x (rest of root sequence)
        let mut acc = 0u128;
        for (used, ways) in self.white_split_counts(tuple, budget) {
            acc += ways * self.count(root, budget - used);
        }
        acc
    }

    /// For the white children labelled `tuple`, the number of ways to hang
    /// subtrees using exactly `used` blacks, for each `used <= budget`.
    fn white_split_counts(&mut self, tuple: &[i64], budget: usize) -> Vec<(usize, u128)> {
        let mut ways = vec![0u128; budget + 1];
        ways[0] = 1;
        for &label in tuple {
            let mut next = vec![0u128; budget + 1];
            for used in 0..=budget {
                if ways[used] == 0 {
                    continue;
                }
                for extra in 0..=(budget - used) {
                    let c = self.count(label, extra);
                    if c != 0 {
                        next[used + extra] += ways[used] * c;
                    }
                }
            }
            ways = next;
        }
        ways.into_iter().enumerate().filter(|(_, w)| *w != 0).collect()
    }

    /// Draw a uniformly random planted mobile with the given root label and
    /// black count.
    pub fn sample(
        &mut self,
        label: i64,
        n: usize,
        rng: &mut SplitMix64,
    ) -> Result<Mobile, MobileError> {
        let total = self.count(label, n);
        if total == 0 {
            return Err(MobileError::ResourceCap(format!(
                "no mobiles with root label {} and {} blacks",
                label, n
            )));
        }
        let children = self.sample_sequence(label, n, rng);
        Ok(Mobile { root_label: label, children })
    }

    fn sample_sequence(&mut self, label: i64, n: usize, rng: &mut SplitMix64) -> Vec<BlackNode> {
        if n == 0 {
            return Vec::new();
        }
        let total = self.count(label, n);
        let mut r = rng.below(total);
        for tuple in allowed_child_tuples(label, self.p, self.flavor.descending) {
            for (used, ways) in self.white_split_counts(&tuple, n - 1) {
                let rest = self.count(label, n - 1 - used);
                let block = ways * rest;
                if r >= block {
                    r -= block;
                    continue;
                }
                // This (tuple, used) block is chosen; split r into the
                // subtree choice and the rest-sequence choice.
                let sub_choice = r / rest;
                let rest_choice = r % rest;
                let whites = self.sample_white_subtrees(&tuple, used, sub_choice);
                let mut out = vec![BlackNode { children: whites }];
                out.extend(self.sample_indexed_sequence(label, n - 1 - used, rest_choice));
                return out;
            }
        }
        unreachable!("count() and the iteration order are consistent");
    }

    /// Unrank the `choice`-th way (in iteration order) to hang subtrees
    /// totalling `used` blacks below whites labelled `tuple`.
    fn sample_white_subtrees(
        &mut self,
        tuple: &[i64],
        used: usize,
        mut choice: u128,
    ) -> Vec<WhiteNode> {
        let Some((&first, rest)) = tuple.split_first() else {
            debug_assert_eq!(used, 0);
            return Vec::new();
        };
        for size in 0..=used {
            let c_first = self.count(first, size);
            if c_first == 0 {
                continue;
            }
            let c_rest: u128 = self
                .white_split_counts(rest, used - size)
                .iter()
                .filter(|(u, _)| *u == used - size)
                .map(|(_, w)| *w)
                .sum();
            let block = c_first * c_rest;
            if choice >= block {
                choice -= block;
                continue;
            }
            let first_choice = choice / c_rest;
            let rest_choice = choice % c_rest;
            let node = WhiteNode {
                label: first,
                children: self.sample_indexed_sequence(first, size, first_choice),
            };
            let mut out = vec![node];
            out.extend(self.sample_white_subtrees(rest, used - size, rest_choice));
            return out;
        }
        unreachable!("choice below the total");
    }

    /// Unrank the `choice`-th sequence (same order as enumeration).
    fn sample_indexed_sequence(&mut self, label: i64, n: usize, mut choice: u128) -> Vec<BlackNode> {
        if n == 0 {
            return Vec::new();
        }
        for tuple in allowed_child_tuples(label, self.p, self.flavor.descending) {
            for (used, ways) in self.white_split_counts(&tuple, n - 1) {
                let rest = self.count(label, n - 1 - used);
                let block = ways * rest;
                if choice >= block {
                    choice -= block;
                    continue;
                }
                let sub_choice = choice / rest;
                let rest_choice = choice % rest;
                let whites = self.sample_white_subtrees(&tuple, used, sub_choice);
                let mut out = vec![BlackNode { children: whites }];
                out.extend(self.sample_indexed_sequence(label, n - 1 - used, rest_choice));
                return out;
            }
        }
        unreachable!("choice below the total");
    }
}

/// Uniform sample over planted floating mobiles of the flavor with `n_black`
/// blacks and the given root label. Deterministic in the seed.
pub fn sample_uniform(
    flavor: Flavor,
    n_black: usize,
    root_label: i64,
    seed: u64,
) -> Result<Mobile, MobileError> {
    let mut table = CountTable::load_or_build(flavor, root_label, n_black);
    let mut rng = SplitMix64::new(seed);
    table.sample(root_label, n_black, &mut rng)
}

#[cfg(test)]
mod tests {
    use super::super::enumerate;
    use super::*;

    #[test]
    fn counts_match_enumeration() {
        for (p, descending) in [(2, false), (2, true), (3, false), (3, true)] {
            let flavor = Flavor { black_degree: Some(p), descending, floating: true };
            let nmax = if p == 2 { 6 } else { 4 };
            let mut t = CountTable::build(flavor, 4, nmax);
            for root in 1..=4 {
                for n in 0..=nmax {
                    let listed = enumerate(flavor, n, root).unwrap().len() as u128;
                    assert_eq!(
                        t.count(root, n),
                        listed,
                        "count mismatch p={} d={} root={} n={}",
                        p,
                        descending,
                        root,
                        n
                    );
                }
            }
        }
    }

    #[test]
    fn sampling_is_deterministic_and_uniformish() {
        let flavor = Flavor::p_mobile(2, true);
        let a = sample_uniform(flavor, 3, 2, 42).unwrap();
        let b = sample_uniform(flavor, 3, 2, 42).unwrap();
        assert_eq!(a, b);
        // n_black = 0 is the bare root with probability 1.
        assert_eq!(sample_uniform(flavor, 0, 1, 7).unwrap(), Mobile::bare(1));
        // Two mobiles at n=1, root 1: both must occur with near-even rates.
        let mut t = CountTable::build(flavor, 1, 1);
        let mut rng = SplitMix64::new(1);
        let mut hits = [0u32; 2];
        for _ in 0..4000 {
            let m = t.sample(1, 1, &mut rng).unwrap();
            let idx = (m.children[0].children[0].label - 1) as usize;
            hits[idx] += 1;
        }
        assert!(hits[0] > 1800 && hits[1] > 1800, "hits {:?}", hits);
    }

    #[test]
    fn sampled_mobiles_are_valid() {
        let flavor = Flavor::p_descending(3, true);
        let mut t = CountTable::build(flavor, 2, 4);
        let mut rng = SplitMix64::new(5);
        for _ in 0..50 {
            let m = t.sample(2, 4, &mut rng).unwrap();
            m.validate(flavor).unwrap();
            assert_eq!(m.black_count(), 4);
        }
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("carto_cache_test_{}", std::process::id()));
        let flavor = Flavor::p_mobile(2, true);
        let mut built = CountTable::build(flavor, 3, 4);
        let path = dir.join("t.bin");
        built.count(3, 4);
        built.save(&path).unwrap();
        let mut loaded = CountTable::load(&path, flavor, 2).unwrap();
        assert_eq!(loaded.count(3, 4), built.count(3, 4));
        let _ = std::fs::remove_dir_all(&dir);
    }
}
