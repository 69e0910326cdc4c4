//! Builds correction words from announced outcomes and reduces them step by
//! step with the four rewrite rules.
//!
//! cargo run --example correction_calculus [-- <word>...]

use cluster_teleport::teleport::{correction_box, correction_chain, simplify_with_trace, CorrectionWord};

fn show(word: &CorrectionWord) {
    let (op, steps) = simplify_with_trace(word);
    let mut line = word.to_string();
    for s in &steps {
        line.push_str(&format!(" -{}-> {}", s.rule, s.word));
    }
    println!("{line}    P = {op}");
}

fn main() -> cluster_teleport::Result<()> {
    let user: Vec<String> = std::env::args().skip(1).collect();
    if !user.is_empty() {
        for w in user {
            show(&w.parse()?);
        }
        return Ok(());
    }

    println!("box, N = 6, j = 01, m = (-1, +1, -1, -1):");
    show(&correction_box("01".parse()?, &[-1, 1, -1, -1], 6)?);
    println!("chain, N = 8, j = 10, m = (+1, -1, +1, +1, -1, +1):");
    show(&correction_chain("10".parse()?, &[1, -1, 1, 1, -1, 1])?);
    println!("free-standing words:");
    for w in ["IIZIXH", "IZIIXIZH", "IXZIXZZX", "XZXZXZH"] {
        show(&w.parse()?);
    }
    Ok(())
}
