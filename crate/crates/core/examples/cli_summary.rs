//! Drives the command-line front end in-process: writes θ₁ as a table, checks it,
//! and prints the resulting summary.json.

fn main() {
    let dir = std::env::temp_dir().join("jacobi-harmonic-example");
    let out = dir.to_string_lossy().into_owned();
    let theta = dir.join("theta_one.csv").to_string_lossy().into_owned();
    let runs: [&[&str]; 2] =
        [&["ingham", "catalog", "--profile", "theta-one", "--out", &theta], &["ingham", "check", "--theta", &theta]];
    let common = ["--output-dir", out.as_str(), "--format", "json"];
    for args in runs {
        let argv = ["jacobi-harmonic"].iter().chain(args).chain(&common).copied();
        let code = jacobi_harmonic::cli::run(argv);
        println!("exit code {code}");
    }
    match std::fs::read_to_string(dir.join("summary.json")) {
        Ok(text) => println!("{text}"),
        Err(e) => eprintln!("no summary: {e}"),
    }
}
