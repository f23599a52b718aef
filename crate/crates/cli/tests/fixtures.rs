//! The bundled fixture files against the zoo, and the verdict of
//! `validate` on each. Set `REGENERATE_FIXTURES=1` to rewrite the files.

use std::path::PathBuf;

use relmonad::Caps;
use relmonad_lab::fixtures::{fixtures, render, Expect};
use relmonad_lab::{run, Document, Options, Status, Suite};

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

#[test]
fn files_match_the_zoo() {
    let regenerate = std::env::var_os("REGENERATE_FIXTURES").is_some();
    for fx in fixtures() {
        let path = dir().join(format!("{}.json", fx.name));
        let expected = render(&fx.document);
        if regenerate {
            std::fs::create_dir_all(dir()).unwrap();
            std::fs::write(&path, &expected).unwrap();
        }
        let found = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(found, expected, "{} is stale", fx.name);
        assert_eq!(Document::parse(found.as_bytes()).unwrap(), fx.document);
    }
}

#[test]
fn every_file_is_a_known_fixture() {
    let names: Vec<String> = fixtures().iter().map(|f| format!("{}.json", f.name)).collect();
    for entry in std::fs::read_dir(dir()).unwrap() {
        let name = entry.unwrap().file_name().into_string().unwrap();
        assert!(names.contains(&name), "unexpected fixture {name}");
    }
}

#[test]
fn validate_accepts_valid_and_rejects_broken_with_witnesses() {
    for fx in fixtures() {
        fx.document.to_input(&Caps::default()).unwrap();
        let opts = Options {
            input: Some(dir().join(format!("{}.json", fx.name))),
            ..Options::default()
        };
        let report = run(Suite::Validate, &opts).unwrap();
        match fx.expect {
            Expect::Valid => assert_eq!(report.exit_code(), 0, "{}", fx.name),
            Expect::Broken => {
                assert_eq!(report.exit_code(), 1, "{}", fx.name);
                for v in report.verdicts.iter().filter(|v| v.status == Status::Fail) {
                    let violations = v.detail["violations"].as_array().unwrap();
                    assert!(!violations.is_empty(), "{}", fx.name);
                    assert!(violations.iter().all(|w| !w["witness"].as_array().unwrap().is_empty()), "{}", fx.name);
                }
            }
        }
    }
}
