//! Interval arithmetic over IEEE-754 binary formats with directed rounding.
//!
//! The crate has two fully independent arithmetic routes:
//!
//! * a production route ([`dir_op`]) that computes each floating-point
//!   operation by integer significand arithmetic and rounds toward the
//!   requested direction, never touching the host floating-point
//!   environment, and
//! * an oracle route ([`ExactReal`] plus [`exact_round`]) that evaluates the
//!   same operation in exact rational arithmetic and rounds by the set
//!   definition of the directed rounding functions.
//!
//! Interval operators are built on the production route; the verification
//! harness in [`oracle`] replays every case on the oracle route and compares.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod exact;
pub mod format;
pub mod interval;
pub mod ops;
pub mod oracle;
pub mod round;
pub mod text;
pub mod value;

pub use exact::{exact_round, ExactReal};
pub use format::{FpFormat, FormatError};
pub use interval::{Interval, InvalidInterval, RawPair};
pub use round::{dir_op, ArithOp, RoundDir};
pub use value::{fp_compare, FpClass, FpCmp, FpValue};
