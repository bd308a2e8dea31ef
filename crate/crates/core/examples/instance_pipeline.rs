//! Generate a random instance document, then run the command line entry
//! point on it in-process.

use std::io::Write;

fn main() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = quivhom::cli::run(["gen", "--seed", "4", "--mode", "p1"], &mut out, &mut err);
    assert_eq!(code, 0);

    let path = std::env::temp_dir().join("quivhom-example-instance.json");
    std::fs::File::create(&path).unwrap().write_all(&out).unwrap();
    let path = path.to_string_lossy().into_owned();

    for cmd in ["ext", "hyper"] {
        let mut report = Vec::new();
        let code = quivhom::cli::run([cmd, &path, "V", "W", "--verify"], &mut report, &mut err);
        println!("{cmd} exited {code}");
        print!("{}", String::from_utf8_lossy(&report));
    }
}
