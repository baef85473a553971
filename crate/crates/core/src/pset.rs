//! A persistent order-statistic set: an AVL tree with path copying.
//!
//! Every update returns a new version sharing all untouched subtrees with
//! the old one, so keeping one version per column of a sweep costs
//! `O(log n)` extra nodes per update.

use std::cmp::Ordering;
use std::rc::Rc;

type Link<K> = Option<Rc<Node<K>>>;

struct Node<K> {
    key: K,
    left: Link<K>,
    right: Link<K>,
    height: u8,
    size: usize,
}

#[inline]
fn height<K>(l: &Link<K>) -> u8 {
    l.as_ref().map_or(0, |n| n.height)
}

#[inline]
fn size<K>(l: &Link<K>) -> usize {
    l.as_ref().map_or(0, |n| n.size)
}

fn mk<K>(key: K, left: Link<K>, right: Link<K>) -> Rc<Node<K>> {
    let height = 1 + height(&left).max(height(&right));
    let size = 1 + size(&left) + size(&right);
    Rc::new(Node { key, left, right, height, size })
}

fn balance<K: Clone>(key: K, left: Link<K>, right: Link<K>) -> Rc<Node<K>> {
    let (hl, hr) = (height(&left), height(&right));
    if hl > hr + 1 {
        let l = left.unwrap();
        if height(&l.left) >= height(&l.right) {
            mk(l.key.clone(), l.left.clone(), Some(mk(key, l.right.clone(), right)))
        } else {
            let lr = l.right.as_ref().unwrap();
            mk(
                lr.key.clone(),
                Some(mk(l.key.clone(), l.left.clone(), lr.left.clone())),
                Some(mk(key, lr.right.clone(), right)),
            )
        }
    } else if hr > hl + 1 {
        let r = right.unwrap();
        if height(&r.right) >= height(&r.left) {
            mk(r.key.clone(), Some(mk(key, left, r.left.clone())), r.right.clone())
        } else {
            let rl = r.left.as_ref().unwrap();
            mk(
                rl.key.clone(),
                Some(mk(key, left, rl.left.clone())),
                Some(mk(r.key.clone(), rl.right.clone(), r.right.clone())),
            )
        }
    } else {
        mk(key, left, right)
    }
}

fn insert<K: Ord + Clone>(link: &Link<K>, key: K) -> Option<Rc<Node<K>>> {
    let Some(n) = link else {
        return Some(mk(key, None, None));
    };
    match key.cmp(&n.key) {
        Ordering::Equal => None,
        Ordering::Less => {
            let l = insert(&n.left, key)?;
            Some(balance(n.key.clone(), Some(l), n.right.clone()))
        }
        Ordering::Greater => {
            let r = insert(&n.right, key)?;
            Some(balance(n.key.clone(), n.left.clone(), Some(r)))
        }
    }
}

fn remove_min<K: Clone>(n: &Rc<Node<K>>) -> (K, Link<K>) {
    match &n.left {
        None => (n.key.clone(), n.right.clone()),
        Some(l) => {
            let (k, nl) = remove_min(l);
            (k, Some(balance(n.key.clone(), nl, n.right.clone())))
        }
    }
}

/// `None` if the key was absent.
fn remove<K: Ord + Clone>(link: &Link<K>, key: &K) -> Option<Link<K>> {
    let n = link.as_ref()?;
    match key.cmp(&n.key) {
        Ordering::Less => {
            let l = remove(&n.left, key)?;
            Some(Some(balance(n.key.clone(), l, n.right.clone())))
        }
        Ordering::Greater => {
            let r = remove(&n.right, key)?;
            Some(Some(balance(n.key.clone(), n.left.clone(), r)))
        }
        Ordering::Equal => Some(match (&n.left, &n.right) {
            (None, r) => r.clone(),
            (l, None) => l.clone(),
            (l, Some(r)) => {
                let (k, nr) = remove_min(r);
                Some(balance(k, l.clone(), nr))
            }
        }),
    }
}

/// Immutable ordered set with rank/select. Cloning is `O(1)`.
pub struct PersistentSet<K> {
    root: Link<K>,
}

impl<K> Clone for PersistentSet<K> {
    fn clone(&self) -> Self {
        PersistentSet { root: self.root.clone() }
    }
}

impl<K> Default for PersistentSet<K> {
    fn default() -> Self {
        PersistentSet { root: None }
    }
}

impl<K: Ord + Clone> PersistentSet<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        size(&self.root)
    }

    pub fn is_empty(&self) -> bool {
        self.root.is_none()
    }

    /// New version containing `key`; unchanged (shared) if already present.
    pub fn insert(&self, key: K) -> Self {
        match insert(&self.root, key) {
            Some(r) => PersistentSet { root: Some(r) },
            None => self.clone(),
        }
    }

    /// New version without `key`; unchanged (shared) if absent.
    pub fn remove(&self, key: &K) -> Self {
        match remove(&self.root, key) {
            Some(r) => PersistentSet { root: r },
            None => self.clone(),
        }
    }

    pub fn contains(&self, key: &K) -> bool {
        let mut cur = &self.root;
        while let Some(n) = cur {
            match key.cmp(&n.key) {
                Ordering::Equal => return true,
                Ordering::Less => cur = &n.left,
                Ordering::Greater => cur = &n.right,
            }
        }
        false
    }

    /// Number of elements strictly less than `key`.
    pub fn rank(&self, key: &K) -> usize {
        let mut cur = &self.root;
        let mut acc = 0;
        while let Some(n) = cur {
            if n.key < *key {
                acc += size(&n.left) + 1;
                cur = &n.right;
            } else {
                cur = &n.left;
            }
        }
        acc
    }

    /// The `idx`-th smallest element (0-based).
    pub fn select(&self, mut idx: usize) -> Option<&K> {
        let mut cur = &self.root;
        while let Some(n) = cur {
            let ls = size(&n.left);
            match idx.cmp(&ls) {
                Ordering::Less => cur = &n.left,
                Ordering::Equal => return Some(&n.key),
                Ordering::Greater => {
                    idx -= ls + 1;
                    cur = &n.right;
                }
            }
        }
        None
    }

    pub fn first(&self) -> Option<&K> {
        self.select(0)
    }

    /// Ascending iterator.
    pub fn iter(&self) -> Iter<'_, K> {
        let mut it = Iter { stack: Vec::new() };
        it.push_left(&self.root);
        it
    }
}

pub struct Iter<'a, K> {
    stack: Vec<&'a Node<K>>,
}

impl<'a, K> Iter<'a, K> {
    fn push_left(&mut self, mut link: &'a Link<K>) {
        while let Some(n) = link {
            self.stack.push(n);
            link = &n.left;
        }
    }
}

impl<'a, K> Iterator for Iter<'a, K> {
    type Item = &'a K;

    fn next(&mut self) -> Option<&'a K> {
        let n = self.stack.pop()?;
        self.push_left(&n.right);
        Some(&n.key)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn check_avl<K: Ord>(l: &Link<K>) -> (u8, usize) {
        match l {
            None => (0, 0),
            Some(n) => {
                let (hl, sl) = check_avl(&n.left);
                let (hr, sr) = check_avl(&n.right);
                assert!(hl.abs_diff(hr) <= 1, "unbalanced");
                assert_eq!(n.height, 1 + hl.max(hr));
                assert_eq!(n.size, 1 + sl + sr);
                if let Some(x) = &n.left {
                    assert!(x.key < n.key);
                }
                if let Some(x) = &n.right {
                    assert!(x.key > n.key);
                }
                (n.height, n.size)
            }
        }
    }

    #[test]
    fn versions_are_independent() {
        let v0 = PersistentSet::new();
        let v1 = v0.insert(5).insert(3).insert(8);
        let v2 = v1.remove(&3).insert(1);
        assert_eq!(v0.len(), 0);
        assert_eq!(v1.iter().copied().collect::<Vec<_>>(), vec![3, 5, 8]);
        assert_eq!(v2.iter().copied().collect::<Vec<_>>(), vec![1, 5, 8]);
        assert_eq!(v1.rank(&6), 2);
        assert_eq!(v2.select(2), Some(&8));
        assert_eq!(v2.select(3), None);
        assert!(v1.contains(&3) && !v2.contains(&3));
        // no-op updates share structure
        assert_eq!(v2.insert(5).len(), 3);
        assert_eq!(v2.remove(&42).len(), 3);
    }

    proptest! {
        #[test]
        fn matches_btreeset(ops in prop::collection::vec((any::<bool>(), 0i32..64), 0..300)) {
            let mut model = BTreeSet::new();
            let mut set = PersistentSet::new();
            let mut history = Vec::new();
            for (ins, k) in ops {
                if ins { model.insert(k); set = set.insert(k); }
                else { model.remove(&k); set = set.remove(&k); }
                check_avl(&set.root);
                history.push((set.clone(), model.clone()));
            }
            for (s, m) in &history {
                prop_assert_eq!(s.iter().copied().collect::<Vec<_>>(), m.iter().copied().collect::<Vec<_>>());
                for probe in [-1, 0, 17, 63, 64] {
                    prop_assert_eq!(s.rank(&probe), m.range(..probe).count());
                }
                for (idx, k) in m.iter().enumerate() {
                    prop_assert_eq!(s.select(idx), Some(k));
                }
            }
        }
    }
}
