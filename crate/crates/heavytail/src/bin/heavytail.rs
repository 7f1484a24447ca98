// SPDX-License-Identifier: MIT

//! Thin binary entry point; all behavior lives in [`heavytail::cli`].

fn main() {
    std::process::exit(heavytail::cli::run());
}
