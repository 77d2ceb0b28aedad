use smallvec::SmallVec;

/// Fixed-width vertex bitset. Hosts up to 128 vertices stay inline.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Bitset {
    words: SmallVec<[u64; 2]>,
}

impl Bitset {
    pub fn with_capacity(n: usize) -> Self {
        let len = n.div_ceil(64).max(1);
        Bitset {
            words: SmallVec::from_elem(0, len),
        }
    }

    pub fn from_vertices(n: usize, vertices: &[u32]) -> Self {
        let mut b = Bitset::with_capacity(n);
        for &v in vertices {
            b.insert(v);
        }
        b
    }

    #[inline]
    pub fn insert(&mut self, v: u32) {
        let v = v as usize;
        self.words[v / 64] |= 1u64 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: u32) {
        let v = v as usize;
        self.words[v / 64] &= !(1u64 << (v % 64));
    }

    #[inline]
    pub fn contains(&self, v: u32) -> bool {
        let v = v as usize;
        self.words
            .get(v / 64)
            .is_some_and(|w| w & (1u64 << (v % 64)) != 0)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// |self ∩ other|.
    #[inline]
    pub fn intersection_len(&self, other: &Bitset) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    #[inline]
    pub fn is_subset(&self, other: &Bitset) -> bool {
        self.words
            .iter()
            .zip(other.words.iter().chain(std::iter::repeat(&0)))
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersect_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= !b;
        }
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros();
                w &= w - 1;
                Some(i as u32 * 64 + bit)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a = Bitset::from_vertices(130, &[0, 5, 64, 129]);
        let b = Bitset::from_vertices(130, &[5, 64, 100]);
        assert_eq!(a.len(), 4);
        assert_eq!(a.intersection_len(&b), 2);
        assert_eq!(a.to_vec(), vec![0, 5, 64, 129]);
        assert!(a.contains(129) && !a.contains(128));
        let mut c = a.clone();
        c.intersect_with(&b);
        assert!(c.is_subset(&a) && c.is_subset(&b));
        c.union_with(&a);
        assert_eq!(c, a);
    }
}
