//! Fusing a damage difference graph into a prior road network.

mod assign;
mod cost;
mod osm;

pub use assign::{assign_damage, assign_damage_bruteforce, DamageAssignment, DamageReport};
pub use cost::{apply_damage_costs, Alpha, CostedGraph};
pub use osm::{load_osm_roads, load_osm_roads_value, OsmImport};
