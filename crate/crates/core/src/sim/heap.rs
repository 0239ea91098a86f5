/// Binary min-heap over reaction indices keyed by putative firing time,
/// with a position table so a key can be changed in `O(log n)`.
#[derive(Clone, Debug)]
pub(crate) struct IndexedHeap {
    keys: Vec<f64>,
    heap: Vec<usize>,
    pos: Vec<usize>,
}

impl IndexedHeap {
    pub fn new(keys: Vec<f64>) -> Self {
        let n = keys.len();
        let mut h = IndexedHeap {
            keys,
            heap: (0..n).collect(),
            pos: (0..n).collect(),
        };
        for i in (0..n / 2).rev() {
            h.sift_down(i);
        }
        h
    }

    pub fn min(&self) -> Option<(usize, f64)> {
        self.heap.first().map(|&r| (r, self.keys[r]))
    }

    pub fn key(&self, r: usize) -> f64 {
        self.keys[r]
    }

    pub fn update(&mut self, r: usize, key: f64) {
        let old = self.keys[r];
        self.keys[r] = key;
        let i = self.pos[r];
        if key < old {
            self.sift_up(i);
        } else {
            self.sift_down(i);
        }
    }

    fn less(&self, a: usize, b: usize) -> bool {
        let (ka, kb) = (self.keys[self.heap[a]], self.keys[self.heap[b]]);
        // ties by reaction index keep the order deterministic
        ka < kb || (ka == kb && self.heap[a] < self.heap[b])
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.heap.swap(a, b);
        self.pos[self.heap[a]] = a;
        self.pos[self.heap[b]] = b;
    }

    fn sift_up(&mut self, mut i: usize) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if !self.less(i, parent) {
                break;
            }
            self.swap(i, parent);
            i = parent;
        }
    }

    fn sift_down(&mut self, mut i: usize) {
        let n = self.heap.len();
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut best = i;
            if l < n && self.less(l, best) {
                best = l;
            }
            if r < n && self.less(r, best) {
                best = r;
            }
            if best == i {
                break;
            }
            self.swap(i, best);
            i = best;
        }
    }
}
