use std::collections::BTreeMap;

use higham_growth::classes::HermitianSplit;
use higham_growth::generators::{random_higham, sample_seed, SamplerConfig};
use higham_growth::harness::{
    certify_matrix, emit_report, parse_matrix, run_campaign, CampaignConfig, CampaignMode,
    FindingKind, ReportFormat,
};
use higham_growth::tolerances::Tolerances;

fn config(mode: CampaignMode) -> CampaignConfig {
    CampaignConfig {
        n_list: vec![2, 4, 6],
        omega_grid: vec![1.0, 8.0, 60.0],
        samples_per_cell: 12,
        seed: 2024,
        ..CampaignConfig::new(mode)
    }
}

#[test]
fn json_and_csv_agree() {
    let report = run_campaign(&config(CampaignMode::VerifyAd)).unwrap();
    let json: serde_json::Value =
        serde_json::from_slice(&emit_report(&report, ReportFormat::Json).unwrap()).unwrap();
    let csv = String::from_utf8(emit_report(&report, ReportFormat::Csv).unwrap()).unwrap();
    let mut rows: BTreeMap<(String, String, String), f64> = BTreeMap::new();
    for line in csv.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f.len(), 4, "{line}");
        rows.insert(
            (f[0].into(), f[1].into(), f[2].into()),
            f[3].parse().unwrap(),
        );
    }
    let cells = json["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 9);
    let mut compared = 0;
    for cell in cells {
        let n = cell["n"].as_u64().unwrap().to_string();
        let omega = format!("{:?}", cell["omega"].as_f64().unwrap());
        for stat in [
            "samples",
            "certificates",
            "rho_min",
            "rho_max",
            "rho_mean",
            "worst_slack",
            "max_conjecture_ratio",
        ] {
            let from_json = cell[stat].as_f64().unwrap();
            let from_csv = rows[&(n.clone(), omega.clone(), stat.to_string())];
            assert_eq!(from_json, from_csv, "{stat} at n={n} omega={omega}");
            compared += 1;
        }
    }
    assert_eq!(compared, 63);
}

#[test]
fn reports_are_reproducible() {
    for mode in [
        CampaignMode::VerifyHigham,
        CampaignMode::ConjectureSearch,
        CampaignMode::Drury,
        CampaignMode::Counterexamples,
    ] {
        let a = emit_report(&run_campaign(&config(mode)).unwrap(), ReportFormat::Json).unwrap();
        let b = emit_report(&run_campaign(&config(mode)).unwrap(), ReportFormat::Json).unwrap();
        assert_eq!(a, b, "{mode:?}");
    }
}

#[test]
fn clean_cells_recertify_individually() {
    let cfg = config(CampaignMode::VerifyHigham);
    let report = run_campaign(&cfg).unwrap();
    assert_eq!(report.binding_violations(), 0);
    for (j, &omega) in cfg.omega_grid.iter().enumerate() {
        for i in [0u64, 7] {
            let seed = sample_seed(cfg.seed, 4, j, i);
            let a = random_higham(&SamplerConfig::new(4, omega, seed)).unwrap();
            let c = certify_matrix(a.matrix(), &Tolerances::default()).unwrap();
            assert_eq!(c.binding_violations, 0);
        }
    }
}

#[test]
fn findings_carry_recheckable_matrices() {
    let mut cfg = config(CampaignMode::VerifyHigham);
    cfg.n_list = vec![3];
    cfg.omega_grid = vec![5.0];
    cfg.samples_per_cell = 4;
    // Upper growth certificates cannot hold with a negative tolerance.
    cfg.tolerances.cert_tol = 0.0;
    cfg.tolerances.pd_tol = 2.0;
    let report = run_campaign(&cfg).unwrap();
    assert_eq!(report.exit_code(), 2);
    assert!(!report.findings.is_empty());
    for f in &report.findings {
        assert_eq!(f.kind, FindingKind::BindingViolation);
        let m = parse_matrix(f.matrix.as_ref().unwrap()).unwrap();
        let regenerated = random_higham(&SamplerConfig::new(f.n, f.omega, f.seed)).unwrap();
        assert_eq!(&m, regenerated.matrix());
    }
}

#[test]
fn conjecture_search_counts_are_consistent() {
    let report = run_campaign(&config(CampaignMode::ConjectureSearch)).unwrap();
    assert_eq!(report.binding_violations(), 0);
    let exceed: usize = report.cells.iter().map(|c| c.conjecture_exceedances).sum();
    let findings = report
        .findings
        .iter()
        .filter(|f| f.kind == FindingKind::Conjecture)
        .count();
    assert_eq!(exceed, findings);
    for cell in &report.cells {
        assert_eq!(
            cell.max_conjecture_ratio.unwrap() > 1.0,
            cell.conjecture_exceedances > 0
        );
    }
}
