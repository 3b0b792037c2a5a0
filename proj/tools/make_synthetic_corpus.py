#!/usr/bin/env python3
"""Regenerates the bundled synthetic corpus under data/.

Everything is derived from a fixed seed, so rerunning the script reproduces
the committed files exactly.
"""
import argparse
import json
import pathlib
import random

DISEASES = ["Hypertension", "Diabetes", "Obesity"]

# (region, count): which diseases are Present for the documents of a region.
REGIONS = [
    (("Hypertension", "Diabetes", "Obesity"), 30),
    (("Hypertension", "Diabetes"), 38),
    (("Hypertension", "Obesity"), 26),
    (("Diabetes", "Obesity"), 22),
    (("Hypertension",), 40),
    (("Diabetes",), 34),
    (("Obesity",), 30),
    ((), 20),
]

SUBSETS = [
    ("1", "Obesity", '"Obesity"'),
    ("2", "Hypertension", '"Hypertension"'),
    ("3", "Diabetes", '"Diabetes"'),
    ("4", "Obesity and Hypertension", '"Obesity" AND "Hypertension"'),
    ("5", "Obesity not Hypertension", '"Obesity" NOT "Hypertension"'),
    ("6", "Hypertension not Obesity", '"Hypertension" NOT "Obesity"'),
    ("7", "Obesity and Diabetes", '"Obesity" AND "Diabetes"'),
    ("8", "Obesity not Diabetes", '"Obesity" NOT "Diabetes"'),
    ("9", "Diabetes not Obesity", '"Diabetes" NOT "Obesity"'),
    ("10", "Hypertension and Diabetes", '"Hypertension" AND "Diabetes"'),
    ("11", "Hypertension not Diabetes", '"Hypertension" NOT "Diabetes"'),
    ("12", "Diabetes not Hypertension", '"Diabetes" NOT "Hypertension"'),
]

GENERAL = [
    "The patient was admitted with {complaint} and was seen by the team.",
    "She denied chest pain and reported feeling better after rest.",
    "He denies fever but complains of mild fatigue.",
    "The family said the children were happy to visit.",
    "Vital signs were stable and the exam was normal.",
    "The patient went home in good condition.",
    "Appetite was poor and sleep was worse during the night.",
    "Nursing notes describe a pleasant and cooperative woman.",
    "Pain was controlled with medications and the patient was comfortable.",
    "The patient tolerated the procedure well without complications.",
    "Anxiety improved after discussion with the physicians.",
    "The wound looked clean and was healing nicely.",
    "He was discharged with follow-up instructions and felt hopeful.",
    "Labs were unremarkable apart from a slightly abnormal count.",
    "The patient had a difficult night with severe nausea.",
    "Her mood was sad but she smiled when her daughters visited.",
    "The patient saw the cardiologist and was reassured.",
    "Breathing was easier and the cough was improving.",
    "There was a small breakdown of the skin near the heel.",
    "The patient feared another fall and walked slowly.",
]

SPECIFIC = {
    "Hypertension": [
        "Blood pressure was elevated and remained high despite treatment.",
        "Hypertension was poorly controlled on three agents.",
        "Pressures improved after the dose was increased.",
        "He reported headaches when his pressure was uncontrolled.",
        "Lisinopril was continued and the pressure readings were better.",
        "The pressure was dangerously high on arrival.",
    ],
    "Diabetes": [
        "Sugars were elevated and insulin was adjusted.",
        "Diabetes was complicated by painful neuropathy in both feet.",
        "Glucose readings improved with a stricter diet.",
        "She had several hypoglycemic episodes and felt weak and shaky.",
        "Metformin was held because of worsening kidney function.",
        "The endocrinologist praised her excellent glucose control.",
    ],
    "Obesity": [
        "The patient is obese and weight loss was strongly encouraged.",
        "Obesity limited mobility and caused chronic knee pain.",
        "She was motivated to lose weight and joined a program.",
        "Morbid obesity made the exam difficult.",
        "Weight was stable and the patient seemed cheerful.",
        "He felt embarrassed discussing his weight gain.",
    ],
}

COMPLAINTS = ["shortness of breath", "chest pain", "dizziness", "fatigue", "swelling", "weakness", "nausea"]

# pos, id, pos score, neg score, terms, gloss
LEXICON = [
    ("a", 1, 0.75, 0.0, "good#1", "having desirable qualities"),
    ("a", 2, 0.625, 0.0, "good#2 well#3", "in good health"),
    ("a", 3, 0.0, 0.625, "bad#1", "having undesirable qualities"),
    ("a", 4, 0.5, 0.0, "well#1", "in good health especially after sickness"),
    ("a", 5, 0.0, 0.5, "poor#1", "deficient in quality"),
    ("a", 6, 0.25, 0.0, "stable#1", "resistant to change"),
    ("a", 7, 0.125, 0.0, "normal#1", "conforming with a standard"),
    ("a", 8, 0.0, 0.375, "abnormal#1", "not normal"),
    ("a", 9, 0.0, 0.125, "mild#1", "moderate in degree"),
    ("a", 10, 0.0, 0.75, "severe#1", "intensely bad"),
    ("a", 11, 0.5, 0.125, "comfortable#1", "free from stress"),
    ("a", 12, 0.875, 0.0, "happy#1", "enjoying well-being"),
    ("a", 13, 0.0, 0.75, "sad#1", "experiencing sorrow"),
    ("a", 14, 0.625, 0.0, "pleasant#1", "affording pleasure"),
    ("a", 15, 0.375, 0.0, "cooperative#1", "willing to work with others"),
    ("a", 16, 0.0, 0.5, "difficult#1 hard#2", "not easy"),
    ("a", 17, 0.0, 0.25, "high#2 elevated#1", "greater than normal in degree"),
    ("a", 18, 0.0, 0.125, "high#1", "greater than normal height"),
    ("a", 19, 0.25, 0.0, "clean#1", "free from dirt"),
    ("a", 20, 0.5, 0.0, "hopeful#1", "having hope"),
    ("a", 21, 0.0, 0.5, "weak#1", "lacking strength"),
    ("a", 22, 0.0, 0.25, "shaky#1", "trembling"),
    ("a", 23, 0.0, 0.5, "painful#1", "causing pain"),
    ("a", 24, 0.875, 0.0, "excellent#1", "very good"),
    ("a", 25, 0.0, 0.25, "obese#1", "excessively fat"),
    ("a", 26, 0.0, 0.375, "chronic#1", "long-lasting"),
    ("a", 27, 0.5, 0.0, "cheerful#1", "being full of cheer"),
    ("a", 28, 0.0, 0.625, "embarrassed#1", "feeling self-conscious"),
    ("a", 29, 0.375, 0.0, "motivated#1", "provided with a motive"),
    ("a", 30, 0.0, 0.25, "uncontrolled#1", "not controlled"),
    ("a", 31, 0.125, 0.0, "easy#1", "posing no difficulty"),
    ("a", 32, 0.0, 0.0, "small#1", "limited in size"),
    ("a", 33, 0.0, 0.125, "slow#1", "not moving quickly"),
    ("r", 34, 0.375, 0.0, "well#1", "in a satisfactory manner"),
    ("r", 35, 0.25, 0.0, "nicely#1", "in a nice way"),
    ("r", 36, 0.0, 0.5, "poorly#1", "in a poor way"),
    ("r", 37, 0.0, 0.375, "dangerously#1", "in a dangerous manner"),
    ("r", 38, 0.125, 0.0, "strongly#1", "with strength"),
    ("r", 39, 0.0, 0.0, "slowly#1", "without speed"),
    ("v", 40, 0.625, 0.0, "improve#1 better#2", "get better"),
    ("v", 41, 0.0, 0.625, "worsen#1", "grow worse"),
    ("v", 42, 0.0, 0.375, "deny#1", "declare untrue"),
    ("v", 43, 0.0, 0.375, "complain#1", "express discontent"),
    ("v", 44, 0.375, 0.0, "tolerate#1", "put up with"),
    ("v", 45, 0.25, 0.0, "heal#1", "get healthy again"),
    ("v", 46, 0.0, 0.5, "fear#1", "be afraid"),
    ("v", 47, 0.5, 0.0, "reassure#1", "cause to feel confident"),
    ("v", 48, 0.625, 0.0, "praise#1", "express approval"),
    ("v", 49, 0.375, 0.0, "smile#1", "change facial expression"),
    ("v", 50, 0.0, 0.0, "see#1", "perceive by sight"),
    ("v", 51, 0.0, 0.0, "go#1", "change location"),
    ("v", 52, 0.0, 0.125, "fall#1", "descend in free fall"),
    ("v", 53, 0.0, 0.0, "walk#1", "use one's feet to advance"),
    ("v", 54, 0.125, 0.0, "encourage#1", "inspire with confidence"),
    ("v", 55, 0.0, 0.0, "visit#1", "go to see"),
    ("v", 56, 0.0, 0.0, "admit#1", "allow participation"),
    ("v", 57, 0.125, 0.0, "control#1", "exercise authoritative control"),
    ("v", 58, 0.0, 0.25, "limit#1", "place limits on"),
    ("n", 59, 0.0, 0.25, "breakdown#1", "the act of disrupting an established order"),
    ("n", 60, 0.0, 0.625, "pain#1", "a symptom of discomfort"),
    ("n", 61, 0.0, 0.5, "nausea#1", "the state of feeling sick"),
    ("n", 62, 0.0, 0.375, "fatigue#1", "temporary loss of strength"),
    ("n", 63, 0.0, 0.625, "anxiety#1", "a vague unpleasant emotion"),
    ("n", 64, 0.0, 0.5, "complication#1", "a further illness"),
    ("n", 65, 0.0, 0.25, "complaint#1", "a symptom of illness"),
    ("n", 66, 0.0, 0.375, "fever#1", "a rise in body temperature"),
    ("n", 67, 0.0, 0.25, "weakness#1", "lack of strength"),
    ("n", 68, 0.0, 0.125, "swelling#1", "abnormal protuberance"),
    ("n", 69, 0.0, 0.125, "dizziness#1", "a reeling sensation"),
    ("n", 70, 0.0, 0.0, "patient#1", "a person who requires medical care"),
    ("n", 71, 0.0, 0.0, "child#1", "a young person"),
    ("n", 72, 0.0, 0.0, "family#1", "a social unit"),
    ("n", 73, 0.125, 0.0, "condition#1", "a state at a particular time"),
    ("n", 74, 0.0, 0.0, "pressure#1", "the force applied to a unit area"),
    ("n", 75, 0.0, 0.0, "blood#1", "the fluid that is circulated"),
    ("n", 76, 0.0, 0.0, "weight#1", "the vertical force exerted by a mass"),
    ("n", 77, 0.0, 0.375, "obesity#1", "more than average fatness"),
    ("n", 78, 0.0, 0.25, "hypertension#1", "a common disorder"),
    ("n", 79, 0.0, 0.25, "diabetes#1", "a disease of high blood sugar"),
    ("n", 80, 0.0, 0.0, "sugar#1", "a white crystalline carbohydrate"),
    ("n", 81, 0.0, 0.0, "insulin#1", "hormone secreted by the pancreas"),
    ("n", 82, 0.0, 0.0, "glucose#1", "a monosaccharide sugar"),
    ("n", 83, 0.0, 0.0, "diet#1", "a prescribed selection of foods"),
    ("n", 84, 0.0, 0.25, "headache#1", "pain in the head"),
    ("n", 85, 0.0, 0.0, "mood#1", "a characteristic state of feeling"),
    ("n", 86, 0.0, 0.0, "night#1", "time after sunset"),
    ("n", 87, 0.0, 0.0, "exam#1", "a medical inspection"),
    ("n", 88, 0.125, 0.0, "treatment#1", "care provided to improve a situation"),
    ("n", 89, 0.0, 0.0, "medication#1", "a substance used in treatment"),
    ("n", 90, 0.0, 0.125, "cough#1", "a sudden expulsion of air"),
    ("n", 91, 0.0, 0.125, "wound#1", "an injury to living tissue"),
    ("n", 92, 0.0, 0.0, "skin#1", "a natural protective body covering"),
    ("n", 93, 0.0, 0.125, "fall#1", "a sudden drop"),
    ("n", 94, 0.25, 0.0, "rest#1", "freedom from activity"),
    ("n", 95, 0.0, 0.0, "sleep#1", "a natural state of rest"),
    ("n", 96, 0.0, 0.0, "appetite#1", "a feeling of craving"),
    ("n", 97, 0.0, 0.125, "loss#1", "something that is lost"),
    ("n", 98, 0.125, 0.0, "program#1", "a series of steps"),
    ("n", 99, 0.0, 0.0, "dose#1", "a measured portion of medicine"),
    ("n", 100, 0.0, 0.375, "neuropathy#1", "a disease of the nerves"),
]

NOUNS = """patient child family condition pressure blood weight obesity hypertension diabetes
sugar insulin glucose diet headache mood night exam treatment medication cough wound skin fall rest
sleep appetite loss program dose neuropathy breakdown pain nausea fatigue anxiety complication
complaint fever weakness swelling dizziness team breath chest woman discussion physician daughter
procedure count follow-up instruction cardiologist agent reading arrival episode foot kidney function
endocrinologist control mobility knee gain heel dose woman man home""".split()
VERBS = """improve worsen deny complain tolerate heal fear reassure praise smile see go fall walk encourage
visit admit control limit say report feel seem continue increase adjust hold join lose make cause look
describe discharge remain complicate""".split()
ADJECTIVES = """good bad well poor stable normal abnormal mild severe comfortable happy sad pleasant cooperative
difficult hard high elevated clean hopeful weak shaky painful excellent obese chronic cheerful
embarrassed motivated uncontrolled easy small slow""".split()
ADVERBS = "well badly nicely poorly dangerously strongly slowly slightly".split()

EXCEPTIONS = {
    "noun": [("children", "child"), ("feet", "foot"), ("women", "woman"), ("men", "man")],
    "verb": [("saw", "see"), ("went", "go"), ("denied", "deny"), ("felt", "feel"), ("said", "say"),
             ("lost", "lose"), ("made", "make"), ("held", "hold"), ("fell", "fall")],
    "adj": [("better", "good"), ("worse", "bad"), ("best", "good"), ("worst", "bad")],
    "adv": [("better", "well"), ("worse", "badly")],
}

POS_FREQUENCY = [("well", "r"), ("better", "a"), ("worse", "a"), ("fall", "n"), ("control", "n"),
                 ("high", "a"), ("pain", "n")]

# NLTK's English stop-word list.
STOPWORDS = """i me my myself we our ours ourselves you you're you've you'll you'd your yours yourself
yourselves he him his himself she she's her hers herself it it's its itself they them their theirs
themselves what which who whom this that that'll these those am is are was were be been being have has
had having do does did doing a an the and but if or because as until while of at by for with about
against between into through during before after above below to from up down in out on off over under
again further then once here there when where why how all any both each few more most other some such
no nor not only own same so than too very s t can will just don don't should should've now d ll m o re
ve y ain aren aren't couldn couldn't didn didn't doesn doesn't hadn hadn't hasn hasn't haven haven't isn
isn't ma mightn mightn't mustn mustn't needn needn't shan shan't shouldn shouldn't wasn wasn't weren
weren't won won't wouldn wouldn't""".split()


def document(rng, present):
    sentences = []
    for disease in present:
        sentences += rng.sample(SPECIFIC[disease], rng.randint(2, 4))
    sentences += rng.sample(GENERAL, rng.randint(5, 9))
    rng.shuffle(sentences)
    text = " ".join(s.format(complaint=rng.choice(COMPLAINTS)) for s in sentences)
    return text + "\n"


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data"))
    parser.add_argument("--seed", type=int, default=20)
    args = parser.parse_args()
    out = pathlib.Path(args.out)
    rng = random.Random(args.seed)

    corpus = out / "corpus"
    corpus.mkdir(parents=True, exist_ok=True)
    for old in corpus.glob("*.txt"):
        old.unlink()
    rows = []
    doc_index = 0
    plan = [present for present, count in REGIONS for _ in range(count)]
    rng.shuffle(plan)
    for present in plan:
        doc_index += 1
        doc_id = f"doc{doc_index:03d}"
        (corpus / f"{doc_id}.txt").write_text(document(rng, present))
        for disease in DISEASES:
            if disease in present:
                cls = "Present"
            else:
                cls = rng.choice(["Absent", "Absent", "Questionable", "Unknown"])
            rows.append(f"{doc_id},{disease},{cls}")
    (out / "annotations.csv").write_text("doc_id,disease,class\n" + "\n".join(rows) + "\n")

    lex_dir = out / "lexicon"
    lex_dir.mkdir(exist_ok=True)
    lines = ["# Miniature SentiWordNet-format lexicon for the synthetic corpus.",
             "# POS\tID\tPosScore\tNegScore\tSynsetTerms\tGloss"]
    for pos, ident, p, n, terms, gloss in LEXICON:
        lines.append(f"{pos}\t{ident:08d}\t{p:g}\t{n:g}\t{terms}\t{gloss}")
    (lex_dir / "sentiwordnet_mini.txt").write_text("\n".join(lines) + "\n")

    morph = out / "morphology"
    morph.mkdir(exist_ok=True)
    for name, words in [("noun", NOUNS), ("verb", VERBS), ("adj", ADJECTIVES), ("adv", ADVERBS)]:
        letter = {"noun": "n", "verb": "v", "adj": "a", "adv": "r"}[name]
        index = [f"{w} {letter} 1 0 1 0 00000000" for w in sorted(set(words))]
        (morph / f"index.{name}").write_text("\n".join(index) + "\n")
        (morph / f"{name}.exc").write_text("\n".join(f"{a} {b}" for a, b in sorted(EXCEPTIONS[name])) + "\n")
    (morph / "pos_frequency.txt").write_text(
        "# word and its most frequent part of speech\n" + "\n".join(f"{w} {p}" for w, p in POS_FREQUENCY) + "\n")

    (out / "stopwords.txt").write_text("\n".join(STOPWORDS) + "\n")

    config = {
        "corpus_dir": "corpus",
        "annotations": "annotations.csv",
        "lexicon": "lexicon/sentiwordnet_mini.txt",
        "morphology_dir": "morphology",
        "stopwords": "stopwords.txt",
        "normalization": "lemma",
        "aggregation": "mean",
        "seed": 42,
        "workers": 1,
        "output_dir": "../out",
        "subsets": [{"id": i, "name": n, "expr": e} for i, n, e in SUBSETS],
        "word2vec": {"dim": 32, "window": 4, "epochs": 10, "negative": 5, "min_count": 2},
        "doc2vec": {"dim": 32, "window": 4, "epochs": 10, "negative": 5, "min_count": 2, "infer_epochs": 20},
    }
    (out / "config.json").write_text(json.dumps(config, indent=2) + "\n")


if __name__ == "__main__":
    main()
