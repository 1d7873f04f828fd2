//! A campaign run through the command-line front end: a JSON array of runs
//! in, CSV and JSON reports out.

use th_szego::cli::run;

fn main() -> std::io::Result<()> {
    let dir = std::env::temp_dir().join("th-szego-campaign");
    std::fs::create_dir_all(&dir)?;
    let gauss = r#"{"form":"log-coeffs","entries":{"1":[0.3,0],"-1":[0.3,0]}}"#;
    let campaign = serde_json::json!([
        {"command": "bogc", "symbol": gauss, "realization": "II", "N": 8},
        {"command": "szego", "symbol": gauss, "realization": "IV", "N_list": [4, 8, 16, 32], "precision_bits": 512},
        {"command": "shifted", "symbol": gauss, "k": -2, "sign": "-", "N": 48},
        {"command": "shifted", "symbol": gauss, "k": 3, "sign": "+", "N": 10},
        {"command": "det", "symbol": gauss, "oplus": true, "N": 6}
    ]);
    let config = dir.join("campaign.json");
    std::fs::write(&config, serde_json::to_string_pretty(&campaign)?)?;
    let csv = dir.join("reports.csv");
    let json = dir.join("reports.json");
    let code = run([
        "th-szego",
        "--config",
        config.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ]);
    println!("\nexit status {code}\n{}", std::fs::read_to_string(&csv)?);
    Ok(())
}
