use finrank::acceptance::{run_all, Settings, CRITERIA};

fn main() {
    let reports = run_all(&Settings::default());
    for r in &reports {
        println!("{r}");
    }
    let failed: Vec<usize> = reports.iter().filter(|r| !r.pass).map(|r| r.id).collect();
    println!(
        "acceptance: {} of {CRITERIA} criteria passed",
        reports.len() - failed.len()
    );
    if reports.len() != CRITERIA || !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
