//! Small combinatorial helpers shared across modules.

/// Binomial coefficient C(n, k); zero when k > n.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub fn factorial(n: u64) -> u128 {
    (1..=n as u128).product()
}

/// Lexicographic iterator over the k-subsets of `0..n`.
#[derive(Clone, Debug)]
pub struct Combinations {
    n: u32,
    current: Vec<u32>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            n: n as u32,
            current: (0..k as u32).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let k = self.current.len();
        // advance to the next subset
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] < self.n - (k - i) as u32 {
                self.current[i] += 1;
                for j in i + 1..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// All k-subsets of the given sorted slice, as sorted vectors, in lexicographic order.
pub fn subsets_of(items: &[u32], k: usize) -> impl Iterator<Item = Vec<u32>> + '_ {
    Combinations::new(items.len(), k).map(move |idx| idx.iter().map(|&i| items[i as usize]).collect())
}

/// Colex rank of a sorted subset of `0..n`; a bijection onto `0..C(n, k)`.
pub fn colex_rank(subset: &[u32]) -> usize {
    subset
        .iter()
        .enumerate()
        .map(|(i, &v)| binomial(v as u64, i as u64 + 1) as usize)
        .sum()
}
