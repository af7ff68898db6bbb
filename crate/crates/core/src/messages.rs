//! Student-facing mistake messages.

use crate::analysis::{Mistake, MistakeKind, MistakeReport};
use crate::bank::ReferenceAnswer;

/// Message templates. `{name}` is a grammatical description or a quoted
/// token, `{token}` is always a quoted token.
#[derive(Debug, Clone, Copy)]
pub struct Templates {
    pub misplaced: &'static str,
    pub missing: &'static str,
    pub extra: &'static str,
}

pub const ENGLISH: Templates = Templates {
    misplaced: "{name} is misplaced",
    missing: "{name} is missing",
    extra: "there is extra {token}",
};

fn quoted(text: &str) -> String {
    format!("\"{text}\"")
}

/// How a misplaced or missing mistake is referred to: the teacher's
/// description of the paired answer token if there is one, otherwise the
/// quoted token text.
pub fn display_name(mistake: &Mistake, chosen: &ReferenceAnswer) -> String {
    mistake
        .answer_index
        .and_then(|i| chosen.description(i))
        .map(str::to_owned)
        .unwrap_or_else(|| quoted(&mistake.text))
}

pub fn render_message(
    mistake: &Mistake,
    chosen: &ReferenceAnswer,
    templates: &Templates,
) -> String {
    match mistake.kind {
        MistakeKind::Misplaced => templates
            .misplaced
            .replace("{name}", &display_name(mistake, chosen)),
        MistakeKind::Missing => templates
            .missing
            .replace("{name}", &display_name(mistake, chosen)),
        // Descriptions are keyed to answer tokens; an extra token has none.
        MistakeKind::Extra => templates.extra.replace("{token}", &quoted(&mistake.text)),
    }
}

/// One message per mistake, in report order.
pub fn render_messages(report: &MistakeReport, chosen: &ReferenceAnswer) -> Vec<String> {
    report
        .mistakes
        .iter()
        .map(|m| render_message(m, chosen, &ENGLISH))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::classify;
    use crate::lcs::lcs_align;
    use crate::lexer::{tokenize, LexerId};
    use crate::token::ComparisonPolicy;

    const ANSWER: &str = "void function(int abc, int def)";
    const RESPONSE: &str = "function int abc, int def, void";

    fn worked_report() -> MistakeReport {
        let p = ComparisonPolicy::CASE_SENSITIVE;
        let a = tokenize(ANSWER, &LexerId::C_FAMILY, p).unwrap();
        let r = tokenize(RESPONSE, &LexerId::C_FAMILY, p).unwrap();
        classify(&a, &r, &lcs_align(&a, &r, p)).unwrap()
    }

    #[test]
    fn plain_token_messages() {
        let msgs = render_messages(&worked_report(), &ReferenceAnswer::new(ANSWER));
        assert_eq!(
            msgs,
            [
                "\"void\" is misplaced",
                "there is extra \",\"",
                "\"(\" is missing",
                "\")\" is missing",
            ]
        );
    }

    #[test]
    fn descriptions_replace_token_text() {
        let answer = ReferenceAnswer::new(ANSWER).with_descriptions([
            "return value type",
            "function name",
            "opening bracket for arguments list",
            "first argument type",
            "first argument name",
            "argument list separator",
            "second argument type",
            "second argument name",
            "closing bracket for arguments list",
        ]);
        let msgs = render_messages(&worked_report(), &answer);
        assert_eq!(
            msgs,
            [
                "return value type is misplaced",
                "there is extra \",\"",
                "opening bracket for arguments list is missing",
                "closing bracket for arguments list is missing",
            ]
        );
    }

    #[test]
    fn perfect_report_has_no_messages() {
        let p = ComparisonPolicy::CASE_SENSITIVE;
        let a = tokenize(ANSWER, &LexerId::C_FAMILY, p).unwrap();
        let rep = classify(&a, &a, &lcs_align(&a, &a, p)).unwrap();
        assert!(render_messages(&rep, &ReferenceAnswer::new(ANSWER)).is_empty());
    }
}
