//! Shapes, cyclic-by-`p` subgroups, the two O-group decisions and the
//! structural reports built on top of them.

mod audit;
mod criterion;
mod cyclic_by_p;
mod report;
mod shape;
mod verdict;

pub use audit::{theorem_audit, AuditStatus, ClaimResult};
pub use criterion::{is_o_group_by_criterion, klein_fours};
pub use cyclic_by_p::{
    cyclic_by_p_subgroups, is_cyclic_by_p, is_o_group_by_definition, scan_cyclic_by_p, Candidate,
    CyclicByP, MAX_SYLOW_FOR_SCAN,
};
pub use report::{
    even_structure_report, odd_structure_report, ChiefFactorAudit, QuotientId, StructureReport,
};
pub use shape::{shape_of, Shape};
pub use verdict::{OortVerdict, Route, Witness};
