use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Trigger {
    Five,
    Thirteen,
}

/// A box over the naturals that answers 1 until it is given 5 or 13.
/// After 5 it answers 2 on every natural not given before; after 13 it
/// answers 3. Earlier answers never change.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Box513 {
    trigger: Option<Trigger>,
    answers: BTreeMap<u64, u8>,
}

impl Box513 {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn trigger(&self) -> Option<Trigger> {
        self.trigger
    }

    pub fn query(&mut self, n: u64) -> u8 {
        if let Some(&a) = self.answers.get(&n) {
            return a;
        }
        let a = match self.trigger {
            None => {
                self.trigger = match n {
                    5 => Some(Trigger::Five),
                    13 => Some(Trigger::Thirteen),
                    _ => None,
                };
                1
            }
            Some(Trigger::Five) => 2,
            Some(Trigger::Thirteen) => 3,
        };
        self.answers.insert(n, a);
        a
    }

    pub fn query_all(&mut self, ns: &[u64]) -> Vec<u8> {
        ns.iter().map(|&n| self.query(n)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn fixed_sequences() {
        assert_eq!(Box513::new().query_all(&[7, 5, 7, 9]), [1, 1, 1, 2]);
        assert_eq!(Box513::new().query_all(&[3, 13, 3, 4]), [1, 1, 1, 3]);
    }

    #[test]
    fn order_changes_answers() {
        assert_eq!(Box513::new().query_all(&[5, 13]), [1, 2]);
        assert_eq!(Box513::new().query_all(&[13, 5]), [1, 3]);
    }

    proptest! {
        #[test]
        fn answers_never_change(ns in prop::collection::vec(0u64..20, 0..60)) {
            let mut b = Box513::new();
            let first = b.query_all(&ns);
            for (n, a) in ns.iter().zip(&first) {
                prop_assert_eq!(b.query(*n), *a);
            }
        }
    }
}
