//! Compiles a small C program against the generated header and the static library.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "plurikit.h"

int main(void) {
    PkContext *ctx = NULL;
    PkPoly *p = NULL, *img = NULL;
    char *s = NULL;
    if (pk_context_new(2, NULL, &ctx) != PK_OK) return 1;
    if (pk_poly_from_json("{\"ambient\":{\"n\":2},\"terms\":[{\"coeff\":\"1\",\"exps\":{\"t_1_2\":1}}]}", &p) != PK_OK) return 2;
    if (pk_phi(ctx, p, 0, &img) != PK_OK) return 3;
    if (pk_poly_to_string(img, &s) != PK_OK) return 4;
    int ok = strcmp(s, "(-k)*t21") == 0;
    pk_string_free(s);
    pk_poly_free(img);
    pk_poly_free(p);
    pk_context_free(ctx);
    if (pk_context_new(0, NULL, &ctx) != PK_INVALID_INPUT) return 5;
    printf("%s\n", pk_status_name(PK_POLE_AT_KAPPA));
    return ok ? 0 : 6;
}
"#;

fn target_dir() -> PathBuf {
    // tests run from target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let lib = target_dir().join("libplurikit_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!("skipping: no C compiler or static library at {}", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    let bin = dir.path().join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&bin)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "smoke program exited with {:?}", out.status);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "PoleAtKappa");
}
