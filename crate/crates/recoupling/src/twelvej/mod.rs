//! 12j coefficients of both kinds: expansion oracles over four 6j
//! coefficients, the reduced fourfold/fivefold sums, symmetry orbits, and
//! stretched/doubly stretched special cases.

pub mod first;
pub mod second;

pub use first::{
    twelvej1_expand, twelvej1_expand_in, twelvej1_fivesum, twelvej1_fivesum_in,
    twelvej1_stretched, twelvej1_stretched_in, twelvej1_symmetry_orbit, FiveSumFormula,
    Stretched1Formula, Twelvej1Labels, V1ExpandVariant,
};
pub use second::{
    twelvej2_expand, twelvej2_expand_in, twelvej2_foursum, twelvej2_foursum_in,
    twelvej2_stretched, twelvej2_stretched_in, twelvej2_symmetry_orbit, FourSumFormula,
    Stretched2Formula, Twelvej2Labels, V2ExpandVariant,
};
