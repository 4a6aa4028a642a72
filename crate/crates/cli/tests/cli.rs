use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hscat::corpus::Corpus;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn hscat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hscat")).args(args).output().unwrap()
}

fn cat(name: &str) -> String {
    corpus_dir().join("categories").join(format!("{name}.json")).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn shipped_corpus_is_the_builtin_one() {
    let shipped = Corpus::load(&corpus_dir()).unwrap();
    let builtin = Corpus::builtin();
    let names = |c: &Corpus| {
        let mut v: Vec<String> = c.categories.iter().map(|n| n.name.clone()).collect();
        v.extend(c.presheaves.iter().map(|n| n.name.clone()));
        v.extend(c.functors.iter().map(|n| n.name.clone()));
        v.sort();
        v
    };
    assert_eq!(names(&shipped), names(&builtin));
    for p in &builtin.presheaves {
        assert_eq!(shipped.presheaves.iter().find(|q| q.name == p.name).unwrap().value, p.value);
    }
}

#[test]
fn exit_codes() {
    let ok = hscat(&["suite", "lemma-natpb", "--corpus", corpus_dir().to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert_eq!(hscat(&["suite", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(hscat(&["suite", "omega", "--alpha", "9"]).status.code(), Some(2));
    assert_eq!(hscat(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hscat(&["dot", "category", "/nonexistent.json"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"objects":["a"],"morphisms":[{"name":"f","dom":"a","cod":"b"}],"compose":[]}"#).unwrap();
    assert_eq!(hscat(&["check", "category", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn dot_counts() {
    let count = |text: &str, pat: &str| text.lines().filter(|l| l.contains(pat)).count();
    let nodes = |text: &str| text.lines().filter(|l| l.trim().starts_with('"') && !l.contains("->")).count();
    let one = stdout(&hscat(&["dot", "category", &cat("terminal")]));
    let two = stdout(&hscat(&["dot", "category", &cat("arrow")]));
    assert_eq!((nodes(&one), count(&one, "->")), (1, 0));
    assert_eq!((nodes(&two), count(&two, "->")), (2, 1));
    let p = corpus_dir().join("presheaves/arrow.two.json");
    let el = stdout(&hscat(&["dot", "presheaf", p.to_str().unwrap()]));
    assert_eq!((nodes(&el), count(&el, "->")), (4, 2));
    assert_eq!(el, stdout(&hscat(&["dot", "presheaf", p.to_str().unwrap()])));
}

#[test]
fn universe_then_classify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = |f: &str| dir.path().join(f).display().to_string();
    let st = hscat(&["universe", "--base", &cat("arrow"), "--alpha", "2", "-o", &out("V.json"), "--proj", &out("p.json")]);
    assert!(st.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out("V.json")).unwrap()).unwrap();
    let sizes: Vec<usize> = ["0", "1"].iter().map(|o| v["sets"][o].as_array().unwrap().len()).collect();
    assert_eq!(sizes, vec![2, 3]);
    let cl = hscat(&["classify", "--family", &out("p.json"), "--alpha", "2", "-o", &out("y.json")]);
    assert!(cl.status.success(), "{}", String::from_utf8_lossy(&cl.stderr));
    assert!(Path::new(&out("y.json")).exists());
}

#[test]
fn realign_from_files() {
    use hscat::io::{map_file, write_json};
    use hscat_core::presheaf::pullback;
    use hscat_core::{build_universe, classify_small, is_small, Guard, NerveAdjunction};

    let corpus = Corpus::builtin();
    let base = corpus.categories.iter().find(|c| c.name == "arrow").unwrap().value.clone();
    let u = build_universe(&NerveAdjunction::new(&base, Guard::default()), 2).unwrap();
    let monos = corpus.monos(&base).unwrap();
    let maps = corpus.maps(&base).unwrap();
    let (c, f) = monos
        .iter()
        .flat_map(|m| maps.iter().map(move |f| (m, f)))
        .find(|(m, f)| f.value.target() == m.value.target() && is_small(&f.value, 2) && !m.value.is_iso())
        .map(|(m, f)| (m.value.clone(), f.value.clone()))
        .unwrap();
    let y_c = classify_small(&pullback(&c, &f).unwrap().left, &u).unwrap().map;

    let dir = tempfile::tempdir().unwrap();
    let path = |n: &str| dir.path().join(n).display().to_string();
    write_json(Path::new(&path("c.json")), &map_file(&c)).unwrap();
    write_json(Path::new(&path("f.json")), &map_file(&f)).unwrap();
    write_json(Path::new(&path("yc.json")), &map_file(&y_c)).unwrap();
    let args = ["realign", "--mono", &path("c.json"), "--family", &path("f.json")];
    let o = hscat(&[&args[..], &["--partial", &path("yc.json"), "--alpha", "2", "-o", &path("y.json")]].concat());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let y = hscat::io::load_map(Path::new(&path("y.json"))).unwrap();
    assert_eq!(y.after(&c).unwrap(), y_c);
}
