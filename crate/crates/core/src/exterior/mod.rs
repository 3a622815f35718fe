//! Exterior algebra of the 7-dimensional model space `T_u SM` in the adapted
//! frame `e_0, …, e_6` (`e_0 = u` horizontal, `e_1..e_3` horizontal,
//! `e_4..e_6` vertical).

mod form;
mod index;
mod linear;

pub use form::{Form, Orientation};
pub use index::{MultiIndex, DIM, HORIZONTAL, VERTICAL};
pub use linear::{Endo7, Vector7};

#[cfg(test)]
mod tests;
