use std::fmt;

/// A subset of `{1, ..., d}`, stored as a bitmask (bit `i - 1` for `i`).
///
/// Used both for vertex colors of balanced complexes and for rank sets of
/// graded posets. Ascending mask order is colexicographic order, which is
/// the iteration order of every flag-vector report.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorSet(u32);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub fn from_mask(mask: u32) -> Self {
        ColorSet(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    /// `{1, ..., d}`.
    pub fn full(d: usize) -> Self {
        assert!(d < 32, "at most 31 colors are supported");
        ColorSet((1u32 << d) - 1)
    }

    pub fn from_colors(colors: impl IntoIterator<Item = usize>) -> Self {
        colors.into_iter().fold(ColorSet::EMPTY, |s, c| s.with(c))
    }

    pub fn with(self, color: usize) -> Self {
        assert!((1..32).contains(&color), "color {color} out of range");
        ColorSet(self.0 | 1 << (color - 1))
    }

    pub fn contains(self, color: usize) -> bool {
        (1..32).contains(&color) && self.0 & (1 << (color - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Complement inside `{1, ..., d}`.
    pub fn complement(self, d: usize) -> Self {
        ColorSet(!self.0 & ColorSet::full(d).0)
    }

    /// Members in increasing order.
    pub fn colors(self) -> impl Iterator<Item = usize> {
        (1..32).filter(move |&c| self.contains(c))
    }

    /// All subsets of `{1, ..., d}` in colex order.
    pub fn all(d: usize) -> impl Iterator<Item = ColorSet> {
        (0..=ColorSet::full(d).0).map(ColorSet)
    }

    /// All subsets of `self`, in increasing mask order.
    pub fn subsets(self) -> impl Iterator<Item = ColorSet> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(ColorSet(cur))
        })
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.colors().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerates_every_submask_once() {
        let s = ColorSet::from_colors([1, 3, 4]);
        let subs: Vec<u32> = s.subsets().map(ColorSet::mask).collect();
        assert_eq!(
            subs,
            vec![0b0000, 0b0001, 0b0100, 0b0101, 0b1000, 0b1001, 0b1100, 0b1101]
        );
        assert_eq!(ColorSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn complement_and_display() {
        let s = ColorSet::from_colors([2]);
        assert_eq!(s.complement(3), ColorSet::from_colors([1, 3]));
        assert_eq!(s.complement(3).to_string(), "{1,3}");
        assert_eq!(ColorSet::EMPTY.to_string(), "{}");
        assert_eq!(ColorSet::all(3).count(), 8);
    }
}
