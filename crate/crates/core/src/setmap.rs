use rustc_hash::FxHashMap;

/// Hash map keyed by small sorted vertex sets.
///
/// When every vertex fits in a byte and sets have at most 16 members the key
/// is packed into a `u128`; otherwise the vertex list itself is the key.
pub(crate) struct SetMap<V> {
    packed: bool,
    small: FxHashMap<u128, V>,
    large: FxHashMap<Box<[u32]>, V>,
}

#[inline]
fn pack(verts: &[u32]) -> u128 {
    verts.iter().fold(0u128, |acc, &v| (acc << 8) | (v as u128 + 1))
}

impl<V> SetMap<V> {
    pub fn new(n: usize, max_len: usize) -> Self {
        SetMap {
            packed: n <= 255 && max_len <= 16,
            small: FxHashMap::default(),
            large: FxHashMap::default(),
        }
    }

    pub fn get(&self, verts: &[u32]) -> Option<&V> {
        if self.packed {
            self.small.get(&pack(verts))
        } else {
            self.large.get(verts)
        }
    }

    pub fn contains(&self, verts: &[u32]) -> bool {
        self.get(verts).is_some()
    }

    pub fn get_or_default(&mut self, verts: &[u32]) -> &mut V
    where
        V: Default,
    {
        if self.packed {
            self.small.entry(pack(verts)).or_default()
        } else {
            self.large.entry(verts.into()).or_default()
        }
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.small.len() + self.large.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packed_and_unpacked_agree() {
        for n in [10, 1000] {
            let mut m: SetMap<u32> = SetMap::new(n, 3);
            *m.get_or_default(&[1, 2, 3]) += 1;
            *m.get_or_default(&[1, 2, 3]) += 1;
            *m.get_or_default(&[0, 2]) += 1;
            assert_eq!(m.get(&[1, 2, 3]), Some(&2));
            assert_eq!(m.get(&[0, 2]), Some(&1));
            assert!(!m.contains(&[2]));
            assert_eq!(m.len(), 2);
        }
    }
}
