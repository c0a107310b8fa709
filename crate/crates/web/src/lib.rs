//! Browser bindings. Each export takes plain strings and returns a JSON
//! string; failures come back as `{"error": "..."}`.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use diary_core::diary::alice_diary_with_log;
use diary_core::embed::{appendix_diary, classify_pair, f_distance, f_embed, h2_embed, EmbeddingConfig};
use diary_core::hexgroup::{group_distance, render_word, side_left_rep, Family, GroupElement};
use diary_core::words::{sentence_tree_distance, Sentence};

#[derive(Serialize)]
struct DiaryRun {
    input: String,
    output: String,
    /// For each day, the chapter and page each letter went to, or null.
    pages: Vec<Vec<Option<(usize, usize)>>>,
}

#[derive(Serialize)]
struct Element {
    shortlex: String,
    a_left: String,
    b_left: String,
    f_a: String,
    f_b: String,
    image_a: String,
    image_b: String,
}

#[derive(Serialize)]
struct Pair {
    d_group: usize,
    d_trees: usize,
    d_image: usize,
    class: &'static str,
}

fn to_json<T: Serialize>(value: Result<T, String>) -> String {
    match value {
        Ok(v) => serde_json::to_string(&v).unwrap_or_else(|e| error_json(&e.to_string())),
        Err(e) => error_json(&e),
    }
}

fn error_json(message: &str) -> String {
    serde_json::json!({ "error": message }).to_string()
}

fn element(text: &str) -> Result<GroupElement, String> {
    text.parse().map_err(|e| format!("{e}"))
}

fn run_diary(kappa: usize, sentence: &str) -> Result<DiaryRun, String> {
    let alpha: Sentence = sentence.parse().map_err(|e| format!("{e}"))?;
    let (output, log) = alice_diary_with_log(kappa, &alpha).map_err(|e| e.to_string())?;
    let pages = log
        .into_iter()
        .map(|day| day.into_iter().map(|p| p.map(|p| (p.chapter, p.page))).collect())
        .collect();
    Ok(DiaryRun { input: alpha.to_string(), output: output.to_string(), pages })
}

fn run_embed(word: &str, kappa: usize) -> Result<Element, String> {
    let g = element(word)?;
    let diary = appendix_diary(&EmbeddingConfig::custom(kappa)).map_err(|e| e.to_string())?;
    let (fa, fb) = f_embed(&g);
    let (da, db) = h2_embed(&g, &diary).map_err(|e| e.to_string())?;
    Ok(Element {
        shortlex: g.to_string(),
        a_left: render_word(&side_left_rep(&g, Family::A)),
        b_left: render_word(&side_left_rep(&g, Family::B)),
        f_a: fa.to_string(),
        f_b: fb.to_string(),
        image_a: da.to_string(),
        image_b: db.to_string(),
    })
}

fn run_pair(g: &str, h: &str, kappa: usize) -> Result<Pair, String> {
    let (g, h) = (element(g)?, element(h)?);
    let config = EmbeddingConfig::custom(kappa);
    let diary = appendix_diary(&config).map_err(|e| e.to_string())?;
    let (ga, gb) = h2_embed(&g, &diary).map_err(|e| e.to_string())?;
    let (ha, hb) = h2_embed(&h, &diary).map_err(|e| e.to_string())?;
    let class = if g == h { "identical" } else { classify_pair(&g, &h, &config).map_err(|e| e.to_string())?.class.name() };
    Ok(Pair {
        d_group: group_distance(&g, &h),
        d_trees: f_distance(&g, &h),
        d_image: sentence_tree_distance(&ga, &ha) + sentence_tree_distance(&gb, &hb),
        class,
    })
}

/// Alice's diary of a sentence such as `abac|cb|accc`.
#[wasm_bindgen]
pub fn diary(kappa: usize, sentence: &str) -> String {
    to_json(run_diary(kappa, sentence))
}

/// Normal forms, tree sentences and diary images of one group element.
#[wasm_bindgen]
pub fn embed(word: &str, kappa: usize) -> String {
    to_json(run_embed(word, kappa))
}

/// Group, tree and image distances between two elements.
#[wasm_bindgen]
pub fn pair(g: &str, h: &str, kappa: usize) -> String {
    to_json(run_pair(g, h, kappa))
}
