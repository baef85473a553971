use std::collections::HashMap;

/// Marker for elements inserted after the last snapshot.
pub const NO_SNAP: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Element {
    pub value: u64,
    /// Index in the snapshot array, or [`NO_SNAP`].
    pub snap: u32,
}

#[derive(Clone, Debug, Default)]
struct Block {
    items: Vec<Element>,
    counts: HashMap<u64, u32>,
}

impl Block {
    fn build(items: Vec<Element>) -> Self {
        let mut counts = HashMap::new();
        for e in &items {
            *counts.entry(e.value).or_insert(0) += 1;
        }
        Block { items, counts }
    }
}

/// Square-root decomposed sequence with per-block value counts.
#[derive(Clone, Debug, Default)]
pub struct LiveArray {
    blocks: Vec<Block>,
    cap: usize,
    len: usize,
}

impl LiveArray {
    pub fn new(items: Vec<Element>) -> Self {
        let len = items.len();
        let cap = ((len as f64).sqrt().ceil() as usize).max(16);
        let blocks = items.chunks(cap).map(|c| Block::build(c.to_vec())).collect();
        LiveArray { blocks, cap, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Block index and offset of 0-based position `pos`.
    fn locate(&self, mut pos: usize) -> (usize, usize) {
        for (b, blk) in self.blocks.iter().enumerate() {
            if pos < blk.items.len() {
                return (b, pos);
            }
            pos -= blk.items.len();
        }
        (self.blocks.len(), 0)
    }

    pub fn get(&self, pos: usize) -> Element {
        let (b, o) = self.locate(pos);
        self.blocks[b].items[o]
    }

    /// Insert so that the new element sits at 0-based `pos` (≤ len).
    pub fn insert(&mut self, pos: usize, e: Element) {
        assert!(pos <= self.len);
        if self.blocks.is_empty() {
            self.blocks.push(Block::default());
        }
        let (mut b, mut o) = self.locate(pos);
        if b == self.blocks.len() {
            b -= 1;
            o = self.blocks[b].items.len();
        }
        let blk = &mut self.blocks[b];
        blk.items.insert(o, e);
        *blk.counts.entry(e.value).or_insert(0) += 1;
        self.len += 1;
        if blk.items.len() > 2 * self.cap {
            let tail = blk.items.split_off(self.cap);
            let head = std::mem::take(&mut blk.items);
            self.blocks[b] = Block::build(head);
            self.blocks.insert(b + 1, Block::build(tail));
        }
    }

    pub fn remove(&mut self, pos: usize) -> Element {
        assert!(pos < self.len);
        let (b, o) = self.locate(pos);
        let blk = &mut self.blocks[b];
        let e = blk.items.remove(o);
        let c = blk.counts.get_mut(&e.value).unwrap();
        *c -= 1;
        if *c == 0 {
            blk.counts.remove(&e.value);
        }
        if blk.items.is_empty() {
            self.blocks.remove(b);
        }
        self.len -= 1;
        e
    }

    /// Occurrences of `value` among the first `end` positions.
    pub fn prefix_count(&self, value: u64, mut end: usize) -> usize {
        let mut total = 0;
        for blk in &self.blocks {
            if end == 0 {
                break;
            }
            if end >= blk.items.len() {
                total += *blk.counts.get(&value).unwrap_or(&0) as usize;
                end -= blk.items.len();
            } else {
                total += blk.items[..end].iter().filter(|e| e.value == value).count();
                end = 0;
            }
        }
        total
    }

    /// Occurrences of `value` in 0-based inclusive `[l, r]`.
    pub fn count(&self, value: u64, l: usize, r: usize) -> usize {
        self.prefix_count(value, r + 1) - self.prefix_count(value, l)
    }

    /// Elements from 0-based `pos` onwards.
    pub fn iter_from(&self, pos: usize) -> impl Iterator<Item = Element> + '_ {
        let (b, o) = self.locate(pos);
        self.blocks
            .iter()
            .skip(b)
            .enumerate()
            .flat_map(move |(t, blk)| blk.items[if t == 0 { o } else { 0 }..].iter().copied())
    }

    /// Elements from 0-based `pos` backwards to the front.
    pub fn iter_rev_from(&self, pos: usize) -> impl Iterator<Item = Element> + '_ {
        let (b, o) = self.locate(pos);
        self.blocks[..=b]
            .iter()
            .rev()
            .enumerate()
            .flat_map(move |(t, blk)| blk.items[..if t == 0 { o + 1 } else { blk.items.len() }].iter().rev().copied())
    }

    pub fn values(&self) -> Vec<u64> {
        self.blocks.iter().flat_map(|b| b.items.iter().map(|e| e.value)).collect()
    }
}
