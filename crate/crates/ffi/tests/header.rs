use std::path::Path;
use std::process::Command;

const HEADER: &str = include_str!("../include/qdisynth.h");

#[test]
fn header_declares_every_entry_point() {
    for sym in [
        "qdi_last_error_message",
        "qdi_function_from_text",
        "qdi_function_from_bits",
        "qdi_function_free",
        "qdi_synthesize",
        "qdi_netlist_fixture",
        "qdi_netlist_from_json",
        "qdi_netlist_to_json",
        "qdi_netlist_free",
        "qdi_string_free",
        "qdi_netlist_inputs",
        "qdi_netlist_eval",
        "qdi_netlist_orphan_rows",
        "qdi_netlist_orphans_json",
        "qdi_netlist_classify",
        "typedef struct QdiNetlist QdiNetlist;",
        "QDI_STATUS_OK = 0",
    ] {
        assert!(HEADER.contains(sym), "missing {sym}");
    }
}

// Compiles and runs a small C client against the static library when a C
// compiler is on PATH.
#[test]
fn c_client_links_and_runs() {
    let Ok(cc) = which_cc() else { return };
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let target = exe.parent().and_then(Path::parent).unwrap();
    let lib = target.join("libqdisynth_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let dir = tempfile_dir();
    let src = dir.join("client.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include "qdisynth.h"
int main(void) {
    QdiNetlist *nl = NULL;
    if (qdi_netlist_fixture("fig4", 0, &nl) != QDI_STATUS_OK) return 10;
    size_t rows = 0;
    if (qdi_netlist_orphan_rows(nl, QDI_PHASE_SET, &rows) != QDI_STATUS_OK) return 11;
    qdi_netlist_free(nl);
    if (qdi_netlist_fixture("nope", 0, &nl) != QDI_STATUS_PARSE) return 12;
    printf("%zu %s\n", rows, qdi_last_error_message() ? "err" : "none");
    return 0;
}
"#,
    )
    .unwrap();
    let bin = dir.join("client");
    let status = Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "4 err\n");
    let _ = std::fs::remove_dir_all(&dir);
}

fn which_cc() -> Result<&'static str, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().is_ok_and(|o| o.status.success()) {
            return Ok(cc);
        }
    }
    Err(())
}

fn tempfile_dir() -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("qdisynth-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}
