fn main() {
    // LAPACK symbols come from the system OpenBLAS build.
    println!("cargo:rustc-link-lib=openblas");
}
