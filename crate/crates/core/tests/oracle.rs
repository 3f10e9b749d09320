//! The brute-force oracle agrees with hand-solved games, so the acceptance
//! comparisons against it are not vacuous.

mod common;

use common::{decision_nodes, has_winning_strategy};
use unravel::fixtures;
use unravel::payoff::{realize_closed, ClosedSpec, LeafSet};
use unravel::tree::Player;

#[test]
fn ex1_closed_payoff() {
    let t = fixtures::ex1();
    let a = realize_closed(&t, &ClosedSpec::new(vec!["1".parse().unwrap()])).unwrap();
    // I opens with 0 and every continuation is in the payoff.
    assert_eq!(has_winning_strategy(&t, &a, Player::I, 12), Some(true));
    assert_eq!(has_winning_strategy(&t, &a, Player::II, 12), Some(false));
}

#[test]
fn ex2_empty_payoff() {
    let t = fixtures::ex2();
    let a = LeafSet::empty(&t);
    assert_eq!(has_winning_strategy(&t, &a, Player::II, 12), Some(true));
    assert_eq!(has_winning_strategy(&t, &a, Player::I, 12), Some(false));
}

#[test]
fn taboo_decides_when_payoff_is_empty() {
    // I moves at 0/0 and can step into 0/0/1, a loss for II.
    let t = fixtures::ex3_with_taboo();
    let a = LeafSet::empty(&t);
    assert_eq!(has_winning_strategy(&t, &a, Player::I, 12), Some(true));
}

#[test]
fn cap_on_decision_nodes() {
    let t = fixtures::ex1_deep();
    assert!(decision_nodes(&t, Player::I).len() > 12);
    assert_eq!(
        has_winning_strategy(&t, &LeafSet::empty(&t), Player::I, 12),
        None
    );
}
