//! Matrix files, campaign configuration, campaign execution and reports.

mod campaign;
mod certify;
mod checks;
mod config;
mod io;
mod report;

pub use campaign::{run_campaign, MAX_RECORDED_PER_CELL};
pub use certify::{certify_matrix, Certification};
pub use checks::{extremal_checks, gap_checks, DEFAULT_DIMENSIONS, DEFAULT_OMEGAS};
pub use config::{CampaignConfig, CampaignMode, ReportFormat};
pub use io::{emit_matrix, parse_matrix, parse_matrix_file, read_matrix, write_matrix_file};
pub use report::{
    emit_report, CampaignReport, CellRecord, Check, Finding, FindingKind, Metadata, Relation,
    Violation, CSV_HEADER,
};
