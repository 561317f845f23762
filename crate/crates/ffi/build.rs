//! Regenerates `include/gfe1313.h` from the exported surface on every
//! build. Generation failures are demoted to a warning so that a broken
//! header generator cannot mask a library build; the ABI test suite checks
//! the header exists and is current.

use std::path::Path;

fn main() {
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("CARGO_MANIFEST_DIR");
    let header = Path::new(&crate_dir).join("include").join("gfe1313.h");
    match cbindgen::generate(&crate_dir) {
        Ok(bindings) => {
            bindings.write_to_file(header);
        }
        Err(err) => println!("cargo:warning=C header not regenerated: {err}"),
    }
}
