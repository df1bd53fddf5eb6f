//! The `mpce` command driven in-process: generate, solve, verify.

use std::fmt::Write as _;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mpce").chain(args.iter().copied());
    let code = mpce::cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8_lossy(&out).into_owned(),
        String::from_utf8_lossy(&err).into_owned(),
    )
}

pub fn run_example() -> Result<String, Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join(format!("mpce-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let inst = dir.join("planted.txt");
    let sol = dir.join("planted.sol");
    let mut log = String::new();

    let (_, text, _) = run(&[
        "generate", "planted", "--sizes", "4,3,3", "--flips", "3", "--seed", "1",
    ]);
    std::fs::write(&inst, &text)?;
    let path = inst.to_str().ok_or("non-utf8 temp dir")?;
    writeln!(
        log,
        "$ mpce generate planted --sizes 4,3,3 --flips 3 --seed 1\n{}",
        text.trim_end()
    )?;

    let params = ["--add", "2", "--delete", "2", "--min-size", "3"];
    let mut solve = vec!["solve", path];
    solve.extend(params);
    let (code, text, stderr) = run(&solve);
    std::fs::write(&sol, &text)?;
    writeln!(
        log,
        "$ mpce solve ... (exit {code})\n{}\n{}",
        text.trim_end(),
        stderr.trim_end()
    )?;

    let mut verify = vec!["verify", path, sol.to_str().ok_or("non-utf8 temp dir")?];
    verify.extend(params);
    let (code, text, _) = run(&verify);
    writeln!(log, "$ mpce verify ... (exit {code})\n{}", text.trim_end())?;

    let (code, text, _) = run(&["stats", path]);
    writeln!(log, "$ mpce stats ... (exit {code})\n{}", text.trim_end())?;
    std::fs::remove_dir_all(&dir)?;
    Ok(log)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    print!("{}", run_example()?);
    Ok(())
}
