use std::fs;
use std::path::Path;
use std::process::Command;

use tempfile::TempDir;
use wcl::cli::main_with;

struct Run {
    code: u8,
    out: String,
    err: String,
}

fn wcl(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("wcl").chain(args.iter().copied());
    let code = main_with(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

const LEFT: &str = "(5 (+) {p & q}) (*) (({p & q} (*) 6) (#) ({p & q} (*) 3))\n";
const RIGHT: &str = "((5 (+) {p & q}) (*) ({p & q} (*) 6)) (#) ((5 (+) {p & q}) (*) ({p & q} (*) 3))\n";

#[test]
fn eval_prints_the_value() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "cx.wpcl", LEFT);
    let r = wcl(&["eval", "--semiring", "nat", "--ports", "p,q", "--formula", &f, "--config", "{{p,q}}"]);
    assert_eq!((r.code, r.out.as_str(), r.err.as_str()), (0, "108\n", ""));
    let r = wcl(&["eval", "--semiring", "nat", "--ports", "p,q", "--formula", &f, "--config", "{{p,q}}", "--format", "tsv"]);
    assert_eq!(r.out, "{{p, q}}\t108\n");
}

#[test]
fn eval_reads_configuration_files_and_weight_names() {
    let d = TempDir::new().unwrap();
    let cfg = write(&d, "g.cfg", "# two interactions\n{ {p}, {p, q} }\n");
    let r = wcl(&["eval", "--semiring", "viterbi", "--ports", "p,q", "-e", "k (*) ~{p}", "--let", "k=0.5", "--config", &cfg]);
    assert_eq!((r.code, r.out.as_str()), (0, "0.5\n"), "{}", r.err);
}

#[test]
fn equiv_reports_a_witness() {
    let d = TempDir::new().unwrap();
    let a = write(&d, "a.wpcl", LEFT);
    let b = write(&d, "b.wpcl", RIGHT);
    let r = wcl(&["equiv", &a, &b, "--semiring", "nat", "--ports", "p,q"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.out, "not equivalent\nwitness: {{p, q}}\nleft: 108\nright: 648\n");
    let r = wcl(&["equiv", &a, &a, "--semiring", "nat", "--ports", "p,q"]);
    assert_eq!((r.code, r.out.as_str()), (0, "equivalent\n"));
    let r = wcl(&["equiv", &a, &b, "--semiring", "bool", "--ports", "p,q"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("bool weight"), "{}", r.err);
}

#[test]
fn fnf_of_zero_is_empty() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "zero.wpcl", "0\n");
    let r = wcl(&["fnf", "--semiring", "minplus", "--ports", "p", "--formula", &f]);
    assert_eq!((r.code, r.out.as_str(), r.err.as_str()), (0, "", ""));
}

#[test]
fn fnf_formats() {
    let r = wcl(&["fnf", "--semiring", "nat", "--ports", "p,q", "-e", "2 (*) {p}"]);
    assert_eq!(r.out, "2 (*) { p & !q }\n2 (*) { p & !q + p & q }\n2 (*) { p & q }\n");
    let r = wcl(&["fnf", "--semiring", "nat", "--ports", "p,q", "-e", "2 (*) {p}", "--format", "tsv"]);
    assert_eq!(r.out, "2\t{{p}}\n2\t{{p}, {p, q}}\n2\t{{p, q}}\n");
    let r = wcl(&["fnf", "--semiring", "nat", "--ports", "p,q", "--dialect", "pcl", "-e", "{p} + {q}"]);
    // Coalescing is a union, so the two parts may overlap.
    let lines: Vec<&str> = r.out.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines.contains(&"1 (*) { p & q }"));
    assert!(lines.contains(&"1 (*) { p & !q + !p & q }"));
    assert!(!lines.iter().any(|l| l.contains("!p & !q")));
}

#[test]
fn parse_errors_exit_two_with_position() {
    let r = wcl(&["eval", "--ports", "p,q", "-e", "({p} + {q}", "--config", "{{p}}"]);
    assert_eq!(r.code, 2);
    assert!(r.out.is_empty());
    assert!(r.err.contains("line 1, column 11"), "{}", r.err);
    let r = wcl(&["fnf", "--ports", "p", "--dialect", "pcl", "-e", "{p} (#) {p}"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("not allowed in pcl"), "{}", r.err);
    let r = wcl(&["eval", "--semiring", "tropical", "--ports", "p", "-e", "1", "--config", "{{p}}"]);
    assert_eq!(r.code, 2);
    let r = wcl(&["eval", "--ports", "p", "-e", "{q}", "--config", "{{p}}"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains('q'), "{}", r.err);
    let r = wcl(&["fnf", "-e", "{p}"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("--ports"), "{}", r.err);
}

#[test]
fn satisfies_exit_status_follows_the_answer() {
    let r = wcl(&["satisfies", "--ports", "p,q", "--dialect", "pcl", "-e", "~{p}", "--config", "{{p},{q}}"]);
    assert_eq!((r.code, r.out.as_str()), (0, "true\n"));
    let r = wcl(&["satisfies", "--ports", "p,q", "--dialect", "pcl", "-e", "{p}", "--config", "{{p},{q}}"]);
    assert_eq!((r.code, r.out.as_str()), (1, "false\n"));
}

const MODEL: &str = "type T ports p\ncomponent c1, c2 : T\n";

#[test]
fn first_order_commands() {
    let d = TempDir::new().unwrap();
    let m = write(&d, "b.model", MODEL);
    let f = write(&d, "all.focl", "forall c:T . {c.p} + {c1.p} + {c1.p}\n");
    let g = write(&d, "sums.focl", "(sum c:T . {c.p} + {c1.p}) + (sum c:T . {c1.p})\n");
    let cfg = "{{c1.p}, {c2.p}}";
    let r = wcl(&["focl-eval", "--model", &m, "--formula", &f, "--config", cfg]);
    assert_eq!((r.code, r.out.as_str()), (0, "false\n"), "{}", r.err);
    let r = wcl(&["satisfies", "--model", &m, "--formula", &g, "--config", cfg]);
    assert_eq!((r.code, r.out.as_str()), (0, "true\n"), "{}", r.err);
    let z = write(&d, "count.wfocl", "Oplus c:T . {c.p} (*) 2\n");
    let r = wcl(&["focl-eval", "--semiring", "nat", "--model", &m, "--formula", &z, "--config", "{{c1.p}}"]);
    assert_eq!((r.code, r.out.as_str()), (0, "2\n"), "{}", r.err);
    let r = wcl(&["focl-eval", "--formula", &f, "--config", cfg]);
    assert_eq!(r.code, 2);
}

#[test]
fn tsp_command() {
    let d = TempDir::new().unwrap();
    let m = write(&d, "m.csv", "0,1,9,4\n1,0,2,9\n9,2,0,3\n4,9,3,0\n");
    let r = wcl(&["tsp", "--matrix", &m]);
    assert_eq!((r.code, r.out.as_str()), (0, "formula: 10\noracle: 10\nPASS\n"));
    let bad = write(&d, "bad.csv", "0,1\n2,0\n");
    assert_eq!(wcl(&["tsp", "--matrix", &bad]).code, 2);
}

#[test]
fn examples() {
    let d = TempDir::new().unwrap();
    let w = write(&d, "w.csv", "1,2\n3,4\n5,6\n");
    let r = wcl(&["example", "master-slave", "--masters", "2", "--slaves", "3", "--weights", &w, "--semiring", "maxplus"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.ends_with("PASS\n"));
    assert!(r.out.contains("{{m2, s1}, {m2, s2}, {m2, s3}}\t12\t12\n"), "{}", r.out);

    let p = write(&d, "p.csv", "0.9,0.2\n0.5,0.4\n0.3,0.7\n");
    let r = wcl(&["example", "pubsub", "--priorities", &p]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.contains("value: 0.63\n") && r.out.ends_with("PASS\n"), "{}", r.out);

    let r = wcl(&["example", "counterexample"]);
    assert!(r.out.contains("= 108\n") && r.out.contains("= 648\n"), "{}", r.out);
}

#[test]
fn selftest_filter_and_mutation() {
    let r = wcl(&["selftest", "--filter", "pubsub"]);
    assert_eq!(r.code, 0, "{}", r.out);
    assert_eq!(r.out.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).count(), 1);
    assert!(r.out.starts_with("PASS [7] pubsub"));

    let r = wcl(&["selftest", "--filter", "tsp", "--mutate-tsp"]);
    assert_eq!(r.code, 1);
    assert!(r.out.starts_with("FAIL [2] tsp"), "{}", r.out);
    assert!(r.out.contains("--- expected 10") && r.out.contains("+++ got      11"), "{}", r.out);

    assert_eq!(wcl(&["selftest", "--filter", "nothing"]).code, 2);
}

#[test]
fn settings_file_supplies_defaults() {
    let d = TempDir::new().unwrap();
    write(&d, "cx.wpcl", LEFT);
    let s = write(
        &d,
        "run.toml",
        "semiring = \"nat\"\nports = [\"p\", \"q\"]\nformula = \"cx.wpcl\"\nconfig = \"{{p, q}}\"\nstrategy = \"sparse\"\n[caps]\ndirect_gamma = 4\n",
    );
    let r = wcl(&["--settings", &s, "eval"]);
    assert_eq!((r.code, r.out.as_str()), (0, "108\n"), "{}", r.err);
    let bad = write(&d, "bad.toml", "semirng = \"nat\"\n");
    assert_eq!(wcl(&["--settings", &bad, "eval"]).code, 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["fnf", "--semiring", "viterbi", "--ports", "p,q", "-e", "close(0.5 (*) {p} (#) 0.25 (*) {q})"];
    let first = wcl(&args).out;
    assert!(!first.is_empty());
    for _ in 0..3 {
        assert_eq!(wcl(&args).out, first);
    }
}

#[test]
fn binary_uses_streams_and_exit_codes() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "cx.wpcl", LEFT);
    let bin = Path::new(env!("CARGO_BIN_EXE_wcl"));
    let o = Command::new(bin)
        .args(["eval", "--semiring", "nat", "--ports", "p,q", "--formula", &f, "--config", "{{p,q}}"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout), "108\n");
    assert!(o.stderr.is_empty());
    let o = Command::new(bin).args(["eval", "--bogus"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty() && !o.stderr.is_empty());
}
