//! File formats and the analysis workflow behind the `pointreg` binary.
//!
//! The binary itself is a thin clap dispatcher; everything that needs
//! testing in-process lives here. Two text formats are spoken:
//!
//! * `pcfg`, a point configuration (field, ambient dimension, coordinates),
//! * `sepcert`, a separator certificate (hyperplane factors plus an
//!   optional residual form).
//!
//! Both are line oriented, `#` starts a comment, blank lines are skipped.

pub mod pcfg;
pub mod report;
