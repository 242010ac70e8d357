use std::path::{Path, PathBuf};
use std::process::Command;

fn header_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include")
}

fn cc() -> String {
    std::env::var("CC").unwrap_or_else(|_| "cc".into())
}

/// Directory holding the static library built alongside this test binary.
fn lib_dir() -> PathBuf {
    std::env::current_exe().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_compiles_as_c() {
    let probe = std::env::temp_dir().join(format!("repnorm_probe_{}.c", std::process::id()));
    std::fs::write(&probe, "#include \"repnorm.h\"\nint main(void) { return REPNORM_STATUS_OK; }\n").unwrap();
    let out = Command::new(cc())
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(header_dir())
        .arg(&probe)
        .output()
        .expect("C compiler available");
    std::fs::remove_file(&probe).ok();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

const PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include "repnorm.h"

int main(void) {
    RepnormRep *rep = NULL;
    RepnormValue v;
    if (repnorm_rep_new_discrete(2, &rep) != REPNORM_STATUS_OK) return 10;
    if (repnorm_coef(rep, 1.0, 1.0, 0.3, &v) != REPNORM_STATUS_OK) return 11;
    if (fabs(v.value.re - 0.7) > 1e-14) return 12;
    if (repnorm_coef(rep, 0.0, 1.0, 0.3, &v) != REPNORM_STATUS_DOMAIN) return 13;
    char msg[128];
    if (repnorm_last_error(msg, sizeof msg) == 0) return 14;
    repnorm_rep_free(rep);

    int64_t num = 0, den = 0;
    if (repnorm_structural_constant("so(1,2)", &num, &den) != REPNORM_STATUS_OK) return 15;
    if (num != 1 || den != 2) return 16;
    if (repnorm_rep_new_complementary(0.5, &rep) != REPNORM_STATUS_DOMAIN || rep != NULL) return 17;
    printf("ok\n");
    return 0;
}
"#;

#[test]
fn c_program_links_against_static_library() {
    let lib = lib_dir().join("librepnorm_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    let dir = std::env::temp_dir().join(format!("repnorm_link_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    let exe = dir.join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let out = Command::new(cc())
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(header_dir())
        .arg(&src)
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .output()
        .expect("C compiler available");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&exe).output().unwrap();
    std::fs::remove_dir_all(&dir).ok();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout), "ok\n");
}
