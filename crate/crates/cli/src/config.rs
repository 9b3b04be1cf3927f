//! Flat `key=value` configuration records for a system.
//!
//! Recognized keys: `family` (a letter), `steps` (comma-separated ascending
//! integers), and optionally `l_x`, `l_y`. Blank lines and `#` comments are
//! ignored.

use rext_core::model::SystemSpec;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecFields {
    pub family: Option<char>,
    pub steps: Option<Vec<u32>>,
    pub l_x: Option<u32>,
    pub l_y: Option<u32>,
}

pub fn parse_config(text: &str) -> Result<SpecFields, String> {
    let mut fields = SpecFields::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key=value, got {line:?}", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "family" => {
                let mut chars = value.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => fields.family = Some(c),
                    _ => return Err(format!("line {}: family must be one letter", lineno + 1)),
                }
            }
            "steps" => {
                let steps = value
                    .split(',')
                    .map(|s| s.trim().parse::<u32>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| format!("line {}: bad steps list: {e}", lineno + 1))?;
                fields.steps = Some(steps);
            }
            "l_x" => {
                fields.l_x = Some(
                    value
                        .parse()
                        .map_err(|e| format!("line {}: bad l_x: {e}", lineno + 1))?,
                );
            }
            "l_y" => {
                fields.l_y = Some(
                    value
                        .parse()
                        .map_err(|e| format!("line {}: bad l_y: {e}", lineno + 1))?,
                );
            }
            other => return Err(format!("line {}: unknown key {other:?}", lineno + 1)),
        }
    }
    Ok(fields)
}

pub fn emit_config(spec: &SystemSpec) -> String {
    let mut out = format!("family={}\n", spec.family().letter());
    let steps: Vec<String> = spec
        .steps()
        .as_slice()
        .iter()
        .map(u32::to_string)
        .collect();
    out.push_str(&format!("steps={}\n", steps.join(",")));
    if let Some(l) = spec.l_x() {
        out.push_str(&format!("l_x={l}\n"));
    }
    if let Some(l) = spec.l_y() {
        out.push_str(&format!("l_y={l}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rext_core::model::{Family, StepIndices};

    #[test]
    fn round_trips_through_the_text_format() {
        let spec = SystemSpec::new(
            Family::D,
            StepIndices::new(vec![2, 3]).unwrap(),
            Some(3),
            Some(2),
        )
        .unwrap();
        let text = emit_config(&spec);
        let fields = parse_config(&text).unwrap();
        assert_eq!(fields.family, Some('d'));
        assert_eq!(fields.steps, Some(vec![2, 3]));
        assert_eq!(fields.l_x, Some(3));
        assert_eq!(fields.l_y, Some(2));
        let rebuilt = SystemSpec::new(
            Family::from_letter(fields.family.unwrap()).unwrap(),
            StepIndices::new(fields.steps.unwrap()).unwrap(),
            fields.l_x,
            fields.l_y,
        )
        .unwrap();
        assert_eq!(rebuilt, spec);
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(parse_config("family=ab").is_err());
        assert!(parse_config("steps=2,x").is_err());
        assert!(parse_config("unknown=1").is_err());
        assert!(parse_config("no-equals-here").is_err());
    }

    #[test]
    fn skips_comments_and_blanks() {
        let fields = parse_config("# a comment\n\nfamily=a\nsteps=2\n").unwrap();
        assert_eq!(fields.family, Some('a'));
        assert_eq!(fields.steps, Some(vec![2]));
    }
}
