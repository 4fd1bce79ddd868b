//! Case-study tables bundled with the crate, resolvable by name.

pub const H2_SWEEP: &str = include_str!("../data/fixtures/h2_sweep.csv");
pub const N2_SPA: &str = include_str!("../data/fixtures/n2_spa.csv");
pub const N2_BOOSTER: &str = include_str!("../data/fixtures/n2_booster.csv");
pub const JELLIUM: &str = include_str!("../data/fixtures/jellium.csv");

pub const NAMES: [&str; 4] = ["h2_sweep", "n2_spa", "n2_booster", "jellium"];

pub fn fixture(name: &str) -> Option<&'static str> {
    match name {
        "h2_sweep" => Some(H2_SWEEP),
        "n2_spa" => Some(N2_SPA),
        "n2_booster" => Some(N2_BOOSTER),
        "jellium" => Some(JELLIUM),
        _ => None,
    }
}
