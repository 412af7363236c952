//! File formats, small-graph enumeration, and the census and verification
//! drivers behind the command-line tool.

pub mod census;
pub mod enumerate;
pub mod io;
pub mod verify;

pub use census::{run_census, run_enumerated_census, CensusOptions, CensusRecord, CensusReport, Check, Status};
pub use enumerate::{canonical_code, canonical_form, enumerate_connected, ENUMERATION_LIMIT};
pub use io::{decode_graph6, encode_graph6, parse_edge_list, read_graphs, InputGraph};
pub use verify::{verify_constructive, ConstructiveRecord};
