//! Basis monomials `e^{i_1} ^ ... ^ e^{i_k}` of the exterior algebra.

use std::cmp::Ordering;
use std::fmt;

/// Sorted index set stored as a bitmask; index 0 is `e^1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Blade(u64);

pub const MAX_DIM: usize = 64;

impl Blade {
    pub const ONE: Blade = Blade(0);

    pub fn from_bits(bits: u64) -> Self {
        Blade(bits)
    }
    pub fn single(i: usize) -> Self {
        Blade(1 << i)
    }
    /// Blade from strictly increasing indices; `None` on repeats.
    pub fn from_sorted(ix: &[usize]) -> Option<Self> {
        let mut bits = 0u64;
        for w in ix.windows(2) {
            if w[0] >= w[1] {
                return None;
            }
        }
        for &i in ix {
            bits |= 1 << i;
        }
        Some(Blade(bits))
    }
    /// Sort arbitrary distinct indices, returning the permutation sign.
    pub fn from_unsorted(ix: &[usize]) -> Option<(Self, i32)> {
        let mut b = Blade::ONE;
        let mut sign = 1;
        for &i in ix {
            let (nb, s) = b.wedge(Blade::single(i))?;
            b = nb;
            sign *= s;
        }
        Some((b, sign))
    }
    pub fn bits(&self) -> u64 {
        self.0
    }
    pub fn grade(&self) -> usize {
        self.0.count_ones() as usize
    }
    pub fn contains(&self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }
    pub fn indices(&self) -> Vec<usize> {
        (0..64).filter(|&i| self.contains(i)).collect()
    }
    pub fn max_index(&self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }
    /// `self ^ o` as `(blade, sign)`, `None` when they share an index.
    pub fn wedge(&self, o: Blade) -> Option<(Blade, i32)> {
        if self.0 & o.0 != 0 {
            return None;
        }
        let mut swaps = 0u32;
        let mut b = o.0;
        while b != 0 {
            let j = b.trailing_zeros();
            swaps += (self.0 >> j).count_ones();
            b &= b - 1;
        }
        Some((Blade(self.0 | o.0), if swaps % 2 == 0 { 1 } else { -1 }))
    }
    /// Insert `e_i` into the first slot.
    pub fn remove_first(&self, i: usize) -> Option<(Blade, i32)> {
        if !self.contains(i) {
            return None;
        }
        let below = (self.0 & ((1u64 << i) - 1)).count_ones();
        Some((Blade(self.0 & !(1 << i)), if below % 2 == 0 { 1 } else { -1 }))
    }
    /// Insert `e_i` into the last slot.
    pub fn remove_last(&self, i: usize) -> Option<(Blade, i32)> {
        if !self.contains(i) {
            return None;
        }
        let above = (self.0 >> i >> 1).count_ones();
        Some((Blade(self.0 & !(1 << i)), if above % 2 == 0 { 1 } else { -1 }))
    }
    pub fn complement(&self, dim: usize) -> Blade {
        let full = if dim == 64 { u64::MAX } else { (1u64 << dim) - 1 };
        Blade(full & !self.0)
    }
    /// All blades of a grade in dimension `dim`, in lexicographic order.
    pub fn of_grade(dim: usize, k: usize) -> Vec<Blade> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(start: usize, dim: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Blade>) {
            if cur.len() == k {
                out.push(Blade::from_sorted(cur).expect("increasing"));
                return;
            }
            for i in start..dim {
                cur.push(i);
                rec(i + 1, dim, k, cur, out);
                cur.pop();
            }
        }
        rec(0, dim, k, &mut cur, &mut out);
        out
    }
    /// Every blade in dimension `dim`, grade ascending.
    pub fn all(dim: usize) -> Vec<Blade> {
        (0..=dim).flat_map(|k| Blade::of_grade(dim, k)).collect()
    }
    pub fn display_with(&self, prefix: &str) -> String {
        if self.0 == 0 {
            return String::new();
        }
        let parts: Vec<String> = self.indices().iter().map(|i| format!("{prefix}{}", i + 1)).collect();
        parts.join("^")
    }
}

/// Grade first, then lexicographic on the sorted index lists.
impl Ord for Blade {
    fn cmp(&self, o: &Self) -> Ordering {
        self.grade().cmp(&o.grade()).then_with(|| {
            let x = self.0 ^ o.0;
            if x == 0 {
                Ordering::Equal
            } else if self.0 >> x.trailing_zeros() & 1 == 1 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            write!(f, "1")
        } else {
            write!(f, "{}", self.display_with("e"))
        }
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
