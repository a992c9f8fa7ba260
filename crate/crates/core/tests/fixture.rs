mod common;

use anusaaraka_core::lexicon::SuffixCategory;
use anusaaraka_core::notation::SenseMark;
use anusaaraka_core::{lookup_root, lookup_tam, render_sentence, resolve_sentence, run_stage1, Pos, UnitBody};

fn stage1(line: &str) -> String {
    render_sentence(&run_stage1(line, &common::tables()).tokens)
}

#[test]
fn golden_sentences() {
    let cases = [
        ("mlru pustakaM caduvutunnArA?", "Apa pustaka paDha_raHA_[HE|thA]_kyA{23_ba.}?"),
        ("mA ammAyiki uxyogaM ceVyyAlani lexu.", "hamArA ladakI_ko` nOkarI karanA_EsA nahIM_[hE|WA]."),
        ("vADu shkUluku vellADu.", "vaha` pAThshAlA_ko` gayA."),
        ("A pAThaSAlaku Trophi vacciMdi.", "vaha- pAThshAlA_ko` Trophi AyI."),
        ("pani cesina rAmmUrti maMcivADu.", "kAma kiyA_HE_jo*_vaHa rAmmUrti bhalA_AdamI."),
        ("UriniMci oVccina nalini mA ceVlleVlu.", "gAzva_se` AyA_HE_jo*_vaHa bImArI_ko hamArA CotI_bahana."),
    ];
    for (src, expected) in cases {
        assert_eq!(stage1(src), expected, "{src}");
    }
}

#[test]
fn fixture_lookups() {
    let t = common::tables();
    let he = lookup_root(&t, "vADu", Some(Pos::Pronoun));
    assert_eq!((he[0].tgt_gloss[0].as_str(), he[0].sense_mark), ("vaha", Some(SenseMark::Backtick)));
    assert_eq!(lookup_root(&t, "caduvu", Some(Pos::Verb))[0].tgt_gloss, vec!["paDha".to_string()]);
    assert_eq!(lookup_root(&t, "nali", Some(Pos::Noun))[0].tgt_gloss, vec!["bImArI".to_string()]);
    assert!(lookup_root(&t, "nalini", None)[0].is_proper);
    assert!(lookup_root(&t, "zzz-unknown", None).is_empty());

    let progressive = lookup_tam(&t, "tunnA").unwrap();
    assert_eq!(progressive.tgt_units[0].body, UnitBody::Lexeme("raHA".into()));
    assert_eq!(progressive.tgt_units[1].body, UnitBody::AltSet(vec!["HE".into(), "thA".into()]));
    let ina = lookup_tam(&t, "ina").unwrap();
    let units: Vec<_> = ina.tgt_units.iter().filter_map(|u| u.lexeme_text()).collect();
    assert_eq!(units, ["yA", "HE"]);
    assert!(lookup_tam(&t, "nolabel").is_none());
    assert!(t.warnings().is_empty());
}

#[test]
fn failure_sentence_keeps_proper_reading_as_alternative() {
    let out = run_stage1("UriniMci oVccina nalini mA ceVlleVlu.", &common::tables());
    let nalini = &out.analyses[2];
    assert_eq!(nalini.chosen.root, "nali");
    assert_eq!(nalini.chosen.suffixes[0].category, SuffixCategory::Case);
    assert_eq!(nalini.alternatives[0].root, "nalini");
    assert_eq!(out.transferred.len(), 5);
}

#[test]
fn stage2_on_fixture() {
    let t = common::tables();
    let kb = common::kb();
    let participial = run_stage1("pani cesina rAmmUrti maMcivADu.", &t).tokens;
    let (out, res) = resolve_sentence(&participial, &kb);
    assert_eq!(render_sentence(&out), "kAma kiyA_HE_jo_ne_vaHa rAmmUrti bhalA_AdamI.");
    assert!(!res.failed);

    let failure = run_stage1("UriniMci oVccina nalini mA ceVlleVlu.", &t).tokens;
    let (out, res) = resolve_sentence(&failure, &kb);
    assert!(res.failed);
    assert_eq!(render_sentence(&out), render_sentence(&failure));
}

#[test]
fn rules_fire_once() {
    let out = run_stage1("pani cesina rAmmUrti maMcivADu.", &common::tables());
    assert_eq!(out.firings.len(), 1);
    assert_eq!((out.firings[0].rule.as_str(), out.firings[0].start), ("rel-clause", 1));
    let comp = run_stage1("mA ammAyiki uxyogaM ceVyyAlani lexu.", &common::tables());
    assert_eq!(comp.firings[0].rule, "comp-neg");
    // no negation, no complementizer
    assert_eq!(stage1("uxyogaM ceVyyAlani"), "nOkarI karanA");
}
