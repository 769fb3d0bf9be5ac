use std::path::PathBuf;

fn main() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");

    let config = cbindgen::Config::from_file(crate_dir.join("cbindgen.toml")).expect("read cbindgen.toml");
    let header = crate_dir.join("include").join("cm_atlas.h");
    std::fs::create_dir_all(header.parent().unwrap()).expect("create include/");
    cbindgen::generate_with_config(&crate_dir, config).expect("generate C header").write_to_file(header);
}
