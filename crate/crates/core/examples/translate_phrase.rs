//! Translate verb phrases through the full pipeline.
//!
//!     cargo run --example translate_phrase -- "gave mother the cold water"

use eyvp::Translator;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let phrases = if args.is_empty() {
        vec![
            "eat cold food".to_owned(),
            "Gave mother the cold water".to_owned(),
            "go to the small house".to_owned(),
            "wash the quinoa".to_owned(),
        ]
    } else {
        vec![args.join(" ")]
    };

    let translator = Translator::builtin();
    for phrase in &phrases {
        println!("{phrase}");
        match translator.translate(phrase) {
            Ok(t) => {
                println!("  rule : {}", t.rule_text(false));
                println!("  plain: {}", t.rule_text(true));
                println!("  w4w  : {}", t.w4w_text(false));
            }
            Err(e) => {
                // The word-for-word channel survives a failed parse.
                println!("  error: {e}");
                println!("  w4w  : {}", e.w4w.join(" "));
            }
        }
    }
}
