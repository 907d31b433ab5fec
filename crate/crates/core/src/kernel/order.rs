use std::cmp::Ordering;

use super::poly::Monomial;

/// Monomial orders. All are total, multiplicative, and have `1` minimal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    GrevLex,
    /// Elimination order: the variables in `first` are compared first
    /// (grevlex restricted to them), ties broken by grevlex on the rest.
    Block { first: Vec<usize> },
}

fn grevlex_on(a: &Monomial, b: &Monomial, keep: impl Fn(usize) -> bool) -> Ordering {
    let da: u32 = a.0.iter().enumerate().filter(|(i, _)| keep(*i)).map(|(_, e)| e).sum();
    let db: u32 = b.0.iter().enumerate().filter(|(i, _)| keep(*i)).map(|(_, e)| e).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.0.len()).rev() {
        if !keep(i) {
            continue;
        }
        if a.0[i] != b.0[i] {
            // smaller exponent in the last differing variable wins
            return b.0[i].cmp(&a.0[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::GrevLex => grevlex_on(a, b, |_| true),
            MonomialOrder::Block { first } => grevlex_on(a, b, |i| first.contains(&i))
                .then_with(|| grevlex_on(a, b, |i| !first.contains(&i))),
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::GrevLex => "grevlex".into(),
            MonomialOrder::Block { first } => format!("block{first:?}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(v: &[u32]) -> Monomial {
        Monomial(v.to_vec())
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::GrevLex;
        // x^2 > xy > y^2 in degree 2
        assert_eq!(o.cmp(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1]), &m(&[0, 2])), Ordering::Greater);
        // degree dominates
        assert_eq!(o.cmp(&m(&[0, 3]), &m(&[2, 0])), Ordering::Greater);
        // x*z^2 < y^3? grevlex with x>y>z: compare last var: z exponent 2 vs 0 -> y^3 wins
        assert_eq!(o.cmp(&m(&[1, 0, 2]), &m(&[0, 3, 0])), Ordering::Less);
    }

    #[test]
    fn block_eliminates_first_block() {
        let o = MonomialOrder::Block { first: vec![2] };
        // anything with t beats anything without
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[5, 5, 0])), Ordering::Greater);
    }

    fn arb_mono(n: usize) -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..5, n).prop_map(Monomial)
    }

    fn orders() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Lex),
            Just(MonomialOrder::GrevLex),
            Just(MonomialOrder::Block { first: vec![0] }),
            Just(MonomialOrder::Block { first: vec![1, 2] }),
        ]
    }

    proptest! {
        #[test]
        fn multiplicative_and_one_minimal(o in orders(), a in arb_mono(3), b in arb_mono(3), c in arb_mono(3)) {
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&c), &b.mul(&c)));
            prop_assert_ne!(o.cmp(&a, &Monomial::one(3)), Ordering::Less);
            if a != b {
                prop_assert_ne!(o.cmp(&a, &b), Ordering::Equal);
            }
        }
    }
}
