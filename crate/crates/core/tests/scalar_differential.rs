//! Drives the integer-significand scalar arithmetic against the exact
//! rational route over every operand pair of the enumerable formats, and
//! over random 64-bit encodings.

use outward_core::oracle::exact_corner;
use outward_core::value::{fp_eq, fp_le};
use outward_core::{dir_op, exact_round, ArithOp, FpFormat, FpValue, RoundDir};

use proptest::prelude::*;

fn assert_matches_exact_route(fmt: FpFormat, u: FpValue, v: FpValue) {
    for op in ArithOp::ALL {
        for dir in [RoundDir::Down, RoundDir::Up] {
            let got = dir_op(op, dir, u, v);
            match exact_corner(op, u, v) {
                None => assert!(
                    got.is_nan(),
                    "{op} {dir} on bits {:#x}, {:#x}: expected NaN, got bits {:#x}",
                    u.bits(),
                    v.bits(),
                    got.bits()
                ),
                Some(exact) => {
                    let want = exact_round(&exact, dir, fmt);
                    assert!(
                        got.is_not_nan() && fp_eq(got, want),
                        "{op} {dir} on bits {:#x}, {:#x}: expected bits {:#x}, got bits {:#x}",
                        u.bits(),
                        v.bits(),
                        want.bits(),
                        got.bits()
                    );
                }
            }
        }
    }
}

fn exhaustive_differential(fmt: FpFormat) {
    let values = FpValue::enumerate(fmt).unwrap();
    for &u in &values {
        for &v in &values {
            assert_matches_exact_route(fmt, u, v);
        }
    }
}

#[test]
fn every_e2m1_pair_matches_the_exact_route() {
    exhaustive_differential(FpFormat::new(2, 1).unwrap());
}

#[test]
fn every_e3m2_pair_matches_the_exact_route() {
    exhaustive_differential(FpFormat::new(3, 2).unwrap());
}

#[test]
fn every_e4m3_pair_matches_the_exact_route() {
    exhaustive_differential(FpFormat::new(4, 3).unwrap());
}

proptest! {
    #[test]
    fn random_binary64_pairs_match_the_exact_route(a in any::<u64>(), b in any::<u64>()) {
        let fmt = FpFormat::BINARY64;
        assert_matches_exact_route(fmt, FpValue::from_bits(fmt, a), FpValue::from_bits(fmt, b));
    }

    #[test]
    fn down_never_exceeds_up(a in any::<u64>(), b in any::<u64>()) {
        let fmt = FpFormat::BINARY64;
        let u = FpValue::from_bits(fmt, a);
        let v = FpValue::from_bits(fmt, b);
        for op in ArithOp::ALL {
            let down = dir_op(op, RoundDir::Down, u, v);
            let up = dir_op(op, RoundDir::Up, u, v);
            prop_assert_eq!(down.is_nan(), up.is_nan());
            if down.is_not_nan() {
                prop_assert!(fp_le(down, up));
            }
        }
    }
}
