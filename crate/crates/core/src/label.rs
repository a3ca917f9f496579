use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// An opaque vertex or element name.
///
/// Labels order "naturally": labels made only of ASCII digits compare as
/// numbers and sort before every other label, which compare as strings.
/// So `2 < 10 < a < b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Label(String);

impl Label {
    pub fn new(text: impl Into<String>) -> Self {
        Label(text.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn numeric_digits(&self) -> Option<&str> {
        let s = self.0.as_str();
        if !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) {
            Some(s.trim_start_matches('0'))
        } else {
            None
        }
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.numeric_digits(), other.numeric_digits()) {
            (Some(a), Some(b)) => a
                .len()
                .cmp(&b.len())
                .then_with(|| a.cmp(b))
                .then_with(|| self.0.cmp(&other.0)),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => self.0.cmp(&other.0),
        }
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label(s.to_owned())
    }
}

impl From<String> for Label {
    fn from(s: String) -> Self {
        Label(s)
    }
}

impl From<&String> for Label {
    fn from(s: &String) -> Self {
        Label(s.clone())
    }
}

impl From<&Label> for Label {
    fn from(l: &Label) -> Self {
        l.clone()
    }
}

macro_rules! label_from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Label {
            fn from(n: $t) -> Self {
                Label(n.to_string())
            }
        }
    )*};
}
label_from_int!(u8, u16, u32, u64, usize, i32, i64);

/// Renders a list of labels as `{a,b,c}`.
pub(crate) fn braced<'a>(labels: impl IntoIterator<Item = &'a Label>) -> String {
    let inner: Vec<&str> = labels.into_iter().map(Label::as_str).collect();
    format!("{{{}}}", inner.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_sort_numerically_before_words() {
        let mut v: Vec<Label> = ["b", "10", "a", "2", "02"].into_iter().map(Label::from).collect();
        v.sort();
        let s: Vec<&str> = v.iter().map(Label::as_str).collect();
        assert_eq!(s, ["02", "2", "10", "a", "b"]);
    }

    #[test]
    fn braced_rendering() {
        let v = [Label::from(1u32), Label::from("x")];
        assert_eq!(braced(&v), "{1,x}");
        assert_eq!(braced(&[]), "{}");
    }
}
