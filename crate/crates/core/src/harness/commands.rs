use std::io::Write;

use serde_json::json;

use crate::codec::binary_recode;
use crate::diary::alice_diary;
use crate::embed::{appendix_codec, appendix_diary, f_embed, h2_embed};
use crate::hexgroup::{bfs_ball, parse_word, reduce, render_word, side_left_rep, Family, GroupElement};
use crate::words::Sentence;

use super::{classification_census, distort, isometry_sweep, selftest, write_records};
use super::{ExperimentConfig, HarnessError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Reduce { word: String },
    NormalForm { word: String },
    Ball,
    Embed { word: String },
    Diary { sentence: String, kappa: Option<usize> },
    Isometry,
    Distort,
    Classify,
    Selftest,
}

fn element(text: &str) -> Result<GroupElement, HarnessError> {
    text.parse().map_err(|e| HarnessError::Config(format!("{e}")))
}

/// Runs one command, writing its report to `out`. Returns the number of
/// invariant violations found.
pub fn run(command: &Command, config: &ExperimentConfig, out: &mut dyn Write) -> Result<u64, HarnessError> {
    match command {
        Command::Reduce { word } => {
            let word = parse_word(word).map_err(|e| HarnessError::Config(e.to_string()))?;
            writeln!(out, "{}", render_word(&reduce(&word)))?;
        }
        Command::NormalForm { word } => {
            let g = element(word)?;
            writeln!(out, "shortlex: {g}")?;
            writeln!(out, "a-left:   {}", render_word(&side_left_rep(&g, Family::A)))?;
            writeln!(out, "b-left:   {}", render_word(&side_left_rep(&g, Family::B)))?;
        }
        Command::Ball => {
            let ball = bfs_ball(config.radius)?;
            let mut sizes = vec![0usize; config.radius + 1];
            for (_, d) in &ball {
                sizes[*d] += 1;
            }
            for (d, n) in sizes.iter().enumerate() {
                writeln!(out, "{}", json!({ "radius": d, "sphere": n }))?;
            }
            writeln!(out, "{}", json!({ "ball": ball.len() }))?;
            if let Some(path) = &config.out {
                let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
                for (g, d) in &ball {
                    writeln!(file, "{d}\t{g}")?;
                }
                file.flush()?;
            }
        }
        Command::Embed { word } => {
            let g = element(word)?;
            let diary = appendix_diary(&config.embedding())?;
            let (fa, fb) = f_embed(&g);
            let (da, db) = h2_embed(&g, &diary)?;
            let codec = appendix_codec(&diary);
            let bits = |s: &Sentence| binary_recode(s, &codec).map(|b| b.to_hex());
            let report = json!({
                "g": g.to_string(),
                "f_a": fa.to_string(),
                "f_b": fb.to_string(),
                "image_a": da.to_string(),
                "image_b": db.to_string(),
                "codec_width": codec.width(),
                "bits_a": bits(&da).map_err(|e| HarnessError::Config(e.to_string()))?,
                "bits_b": bits(&db).map_err(|e| HarnessError::Config(e.to_string()))?,
            });
            writeln!(out, "{report}")?;
        }
        Command::Diary { sentence, kappa } => {
            let alpha: Sentence = sentence.parse().map_err(|e| HarnessError::Config(format!("{e}")))?;
            writeln!(out, "{}", alice_diary(kappa.unwrap_or(config.kappa), &alpha)?)?;
        }
        Command::Isometry => {
            let report = isometry_sweep(config.radius, config.samples, config.sample_len, config.seed)?;
            writeln!(out, "{}", serde_json::to_string(&report)?)?;
            return Ok(report.violations);
        }
        Command::Distort => {
            let (records, summary) = distort(config)?;
            if let Some(path) = &config.out {
                write_records(&records, path, config.format)?;
            }
            writeln!(out, "{}", serde_json::to_string(&summary)?)?;
            return Ok(summary.violations);
        }
        Command::Classify => {
            let (records, summary) = distort(config)?;
            if let Some(path) = &config.out {
                write_records(&records, path, config.format)?;
            }
            let census = classification_census(config.radius, config.min_distance, &config.embedding())?;
            writeln!(out, "{}", json!({ "sampled": summary.classes, "pairs": summary.pairs, "census": census }))?;
            return Ok(census.neither);
        }
        Command::Selftest => {
            let results = selftest()?;
            let mut failed = 0;
            for r in &results {
                writeln!(out, "{} {} ({} checked)", if r.passed { "PASS" } else { "FAIL" }, r.name, r.checked)?;
                if !r.passed {
                    failed += 1;
                    for d in &r.detail {
                        writeln!(out, "    {d}")?;
                    }
                }
            }
            return Ok(failed);
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn text(command: Command, config: &ExperimentConfig) -> String {
        let mut out = Vec::new();
        assert_eq!(run(&command, config, &mut out).unwrap(), 0);
        String::from_utf8(out).unwrap()
    }

    #[test]
    fn small_commands() {
        let config = ExperimentConfig { radius: 2, samples: 50, ..Default::default() };
        assert_eq!(text(Command::Reduce { word: "a1 b2 a1".into() }, &config), "b2\n");
        assert!(text(Command::NormalForm { word: "b1 a2 a3 b2 a1 b1".into() }, &config)
            .contains("a-left:   a2 a3 b1 a1 b2 b1"));
        assert!(text(Command::Ball, &config).contains("{\"ball\":31}"));
        assert_eq!(text(Command::Diary { sentence: "ab|cd".into(), kappa: Some(1) }, &config), "b|d\n");
        assert!(text(Command::Embed { word: "a1 b1".into() }, &config).contains("\"f_a\":\"[a1]\""));
        assert!(text(Command::Distort, &config).contains("\"violations\":0"));
    }

    #[test]
    fn bad_input_is_a_config_error() {
        let config = ExperimentConfig::default();
        let err = run(&Command::Reduce { word: "c7".into() }, &config, &mut Vec::new()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
