//! Piercing search driven by a KKM-style cover of the simplex: chord systems
//! on the unit circle, disk regions, Sperner labeling, and the three-phase
//! procedure that returns exact piercing lines or an ordered C(k) witness.

pub mod chords;
pub mod regions;
pub mod search;
pub mod sperner;

pub use chords::{ChordSystem, FloatBody, SimplexPoint};
pub use regions::{cover_label, quadrant_region_index, region_contains, CoverLabel};
pub use search::{
    check_extraction_separations, chord_line_exact, find_piercing_lines,
    find_piercing_lines_with, piercing_gap, solution_to_json, sperner_witness, Diagnostics,
    SearchConfig, SearchOutcome, SearchResult, WitnessDetail,
};
pub use sperner::{sperner_scan, LabeledVertex, SpernerStats};
