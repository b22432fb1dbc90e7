//! Separating curves on surfaces with a translation: the flute model, the
//! symbolic model for general surfaces, flux and Hamming pseudometrics, and
//! certified detour paths.

pub mod avenue;
pub mod checks;
pub mod flute;
pub mod flux;
pub mod oracle;
pub mod path;
pub mod side;
pub mod surface;
