//! Generates the C header from the annotated sources. The header is written
//! into `OUT_DIR` and mirrored to `include/fmcalc.h` so that consumers can
//! use the crate directory as an include path.

use std::path::Path;

fn main() {
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");

    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("cargo sets CARGO_MANIFEST_DIR");
    let out_dir = std::env::var("OUT_DIR").expect("cargo sets OUT_DIR");
    let generated = Path::new(&out_dir).join("fmcalc.h");

    let bindings = cbindgen::generate(&crate_dir).expect("the C header should generate cleanly");
    bindings.write_to_file(&generated);

    // Mirror into the committed copy when it drifts; best effort so that
    // read-only checkouts still build.
    let committed = Path::new(&crate_dir).join("include/fmcalc.h");
    let fresh = std::fs::read(&generated).expect("the generated header is readable");
    if std::fs::read(&committed).ok().as_deref() != Some(fresh.as_slice()) {
        let _ = std::fs::write(&committed, &fresh);
    }
}
