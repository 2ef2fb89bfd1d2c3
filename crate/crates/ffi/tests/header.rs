use std::path::{Path, PathBuf};
use std::process::Command;

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/nearsemi.h")
}

#[test]
fn header_declares_the_api() {
    let text = std::fs::read_to_string(header()).unwrap();
    for f in [
        "ns_algebra_parse",
        "ns_algebra_free",
        "ns_algebra_size",
        "ns_algebra_check",
        "ns_algebra_product",
        "ns_congruence_count",
        "ns_ideal_count",
        "ns_center",
        "ns_is_central",
        "ns_report",
        "ns_string_free",
        "ns_last_error_message",
        "ns_enumerate_count",
    ] {
        assert!(text.contains(&format!("{f}(")), "{f} missing");
    }
    assert!(text.contains("typedef struct NsAlgebra NsAlgebra;"));
    assert!(text.contains("NS_STATUS_BUFFER_TOO_SMALL = 7"));
}

/// Compiles and runs a C client against the static library.
#[test]
fn c_client_links_and_runs() {
    let target = std::env::current_exe()
        .unwrap()
        .parent()
        .and_then(Path::parent)
        .unwrap()
        .to_path_buf();
    let lib = target.join("libnearsemi_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("client.c");
    let exe = dir.path().join("client");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include "nearsemi.h"
int main(void) {
    const char *text = "kind = luk-rs\nsize = 2\nzero = 0\none = 1\n"
                       "plus = [[0, 1], [1, 1]]\ntimes = [[0, 0], [0, 1]]\nalpha = [1, 0]\n";
    NsAlgebra *alg = NULL;
    if (ns_algebra_parse(text, &alg) != NS_STATUS_OK) return 1;
    uintptr_t n = 0;
    if (ns_congruence_count(alg, &n) != NS_STATUS_OK || n != 2) return 2;
    bool ok = false;
    if (ns_algebra_check(alg, NS_CLASS_LUK_RS, &ok) != NS_STATUS_OK || !ok) return 3;
    ns_algebra_free(alg);
    if (ns_algebra_parse("size = 0", &alg) != NS_STATUS_PARSE) return 4;
    printf("%s\n", ns_last_error_message());
    return 0;
}
"#,
    )
    .unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("`size` must be positive"));
}
