//! The built-in sentence templates, their canonical prints, and their prenex
//! classes.
//!
//! Run with: cargo run --example sentence_templates

use flg::sentences::{
    build_template, classify_prenex, parse_formula, BuiltTemplate, Presentation, TemplateParams,
};
use flg::word::{parse_word, GroupContext};

fn show(name: &str, params: &TemplateParams) {
    match build_template(params).unwrap() {
        BuiltTemplate::Single(f) => {
            let class = classify_prenex(&f).unwrap();
            println!("{name} [{class}]:\n  {f}");
            // parse of the print is the identity
            assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        }
        BuiltTemplate::Pair { sigma, tau } => {
            println!(
                "{name} sigma [{}]:\n  {sigma}",
                classify_prenex(&sigma).unwrap()
            );
            println!("{name} tau   [{}]:\n  {tau}", classify_prenex(&tau).unwrap());
        }
    }
}

fn main() {
    show("phi_2", &TemplateParams::PhiN { n: 2 });
    show("psi_{2,1}", &TemplateParams::PsiPK { p: 2, k: 1 });
    show("pi_3", &TemplateParams::PiP { p: 3 });
    show("sigma(1,2,1)", &TemplateParams::SigmaGNK { g: 1, n: 2, k: 1 });

    let ctx = GroupContext::new(2).unwrap();
    show(
        "conjugacy pair",
        &TemplateParams::ConjPair {
            presentation: Presentation {
                generators: 2,
                relators: vec![],
            },
            w: parse_word("ab", &ctx).unwrap(),
            u: parse_word("ba", &ctx).unwrap(),
        },
    );
}
