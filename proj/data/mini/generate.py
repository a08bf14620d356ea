#!/usr/bin/env python3
"""Regenerates the mini corpus: tweets, fact-check articles and word vectors.

Output is a pure function of SEED. Label tables and config.json are
maintained by hand because they depend on the fitted topics.
"""

import json
import math
import random
from pathlib import Path

SEED = 2
DIM = 32
HERE = Path(__file__).resolve().parent

# Tweet-side topic vocabularies.
TWEET_TOPICS = {
    "efficacy": {
        "words": "efficacy trial trials study data percent results immune response antibodies "
                 "tested testing development fetal cell lines aborted fetus humans phase "
                 "volunteers protection effective approval evidence scientists lab cells contain "
                 "ingredients reactions safety reviewed".split(),
        "phrases": ["the trial data shows", "phase three results", "fetal cell lines",
                    "never tested on humans", "immune response in volunteers",
                    "percent efficacy against infection"],
        "entities": ["pfizer", "moderna", "astrazeneca", "mrna", "johnson and johnson", "novavax"],
    },
    "choices": {
        "words": "choice choose decision refuse refusing mandate freedom body personal "
                 "taking decide right forced wait waiting hesitant family informed consent "
                 "option rather prefer risks side effects safe benefits outweigh rare clots blood "
                 "reactions regulators safety ingredients masks proud dubious cases works".split(),
        "phrases": ["my body my choice", "not taking it", "i will wait and see",
                    "nobody should be forced", "informed consent matters",
                    "it is a personal decision"],
        "entities": ["astrazeneca", "pfizer", "moderna", "jnj"],
    },
    "trump": {
        "words": "trump president administration white house rally election tweeted "
                 "tweet claims supporters campaign biden credit press briefing "
                 "republicans democrats office posts post hospital health workers nurses "
                 "doctors statement".split(),
        "phrases": ["trump wants credit", "the white house briefing", "biden administration",
                    "at the rally he claimed", "trump tweeted again", "his supporters believe"],
        "entities": ["trump", "biden", "pfizer", "moderna"],
    },
    "warpspeed": {
        "words": "operation warp speed funding money agency contract billions scheme "
                 "deal manufacturing federal invested investment taxpayer contracts "
                 "deals market sell pay".split(),
        "phrases": ["operation warp speed", "billions in federal funding", "agency contract",
                    "taxpayer money", "manufacturing deal", "warp speed scheme"],
        "entities": ["pfizer", "biontech", "moderna", "astrazeneca"],
    },
    "shots": {
        "words": "shot jab arm sore appointment clinic dose second first got today pharmacy "
                 "booked line nurse sticker tired headache fever students school schools campus "
                 "teachers parents classes".split(),
        "phrases": ["got my second dose today", "sore arm", "booked my appointment",
                    "the pharmacy line", "first jab done", "booster shot next week"],
        "entities": ["pfizer", "moderna", "booster", "astrazeneca", "phizer"],
    },
}

# Fact-check article topic vocabularies.
ARTICLE_TOPICS = {
    "effects": {
        "words": "effects side vaccine fetal cells contain ingredients safe risks clots "
                 "blood rare reactions benefits outweigh regulators aborted lines cell "
                 "development tested trials safety reviewed".split(),
        "titles": ["{e} vaccine does not alter human DNA",
                   "Rare blood clots reported after {e} vaccine are under review",
                   "Side effects of the {e} vaccine are mostly mild",
                   "Regulators say {e} vaccine benefits outweigh the risks",
                   "No, the {e} vaccine does not contain microchips",
                   "Fetal cell lines were used in testing but are not in the {e} vaccine"],
        "entities": ["pfizer", "moderna", "astrazeneca", "johnson", "novavax"],
    },
    "healthworkers": {
        "words": "trump posts health workers nurses doctors hospital hospitals post "
                 "posted tweet claims president staff frontline praised attacked "
                 "statement video account".split(),
        "titles": ["Trump post about nurses is missing context",
                   "No, Trump did not call health workers frauds",
                   "Video shared by Trump misrepresents hospital staff",
                   "Trump post on doctors and hospital payments is misleading",
                   "Fact check: Trump did not praise frontline workers in that post"],
        "entities": ["trump", "biden"],
    },
    "masks": {
        "words": "mask masks wearing face covering cloth mandate spread droplets oxygen "
                 "filter surgical n95 indoors outdoors children breathing protect "
                 "studies distancing".split(),
        "titles": ["Masks do not lower oxygen levels in healthy adults",
                   "Cloth masks reduce droplet spread, studies show",
                   "No, mask mandates were not lifted nationwide",
                   "Wearing a mask outdoors is not dangerous for children",
                   "Surgical masks filter droplets but not all particles"],
        "entities": [],
    },
    "school": {
        "words": "school schools students online learning classes teachers remote "
                 "education parents funding government money program budget laptops "
                 "districts federal reopening".split(),
        "titles": ["Schools did not receive federal funding to stay closed",
                   "Online learning program was not cancelled by the government",
                   "No, teachers were not paid to keep classes remote",
                   "District laptops for remote learning were not recalled",
                   "Claim about school reopening money is false"],
        "entities": [],
    },
}

GENERIC = ("covid vaccine vaccines people pandemic virus news week now really "
           "everyone country world".split())
SENTIMENT = {
    "pos": "good great safe effective proud thankful hopeful relieved best".split(),
    "neg": "bad terrible dangerous scam lies scared worried awful harmful".split(),
}

# Worked examples that the test-suite and README walk through.
EXAMPLE_TWEETS = [
    ("efficacy", True,
     "they all used aborted fetus either in development or testing. Especially, in the "
     "vaccine astrazeneca johnson and johnson have fetal cell lines and is being said the "
     "mrna is something never tested on humans"),
    ("choices", True,
     "i am proud of you for refusing it. Astrazeneca vaccine is dubious too many bad cases "
     "than goods in results of taking that, so whether it works or not it won't be any of "
     "my portion"),
    ("warpspeed", True,
     "maybe he kept some so he can sell them to the black market remember he is in debt or "
     "to punish BioNTech pfizer for letting the world know that operation warp speed money "
     "was not involved in their vaccine development. This mean guy is capable of heinous "
     "crimes"),
]
EXAMPLE_ARTICLES = [
    ("effects", "Johnson & Johnson's COVID-19 vaccine does not contain aborted fetal cells"),
    ("effects", "Experts say the Oxford AstraZeneca COVID-19 vaccine is safe and that its "
                "benefits far outweigh possible risks"),
    ("healthworkers", "No, Trump didn't tweet his blood is a vaccine"),
]

# Pure articles per topic, then mixed pairs; the mixed pairs shape the
# co-occurrence graph so that healthworkers is the hub and school's
# strongest neighbor.
PURE_ARTICLES = {"effects": 12, "healthworkers": 10, "masks": 9, "school": 9}
MIXED_ARTICLES = [("healthworkers", "school")] * 4 + [("healthworkers", "masks")] * 3 + \
                 [("healthworkers", "effects")] * 2 + [("effects", "masks")]
TWEETS_PER_TOPIC = 40


def bag(rng, topic, n):
    return [rng.choice(topic["words"]) for _ in range(n)]


def make_tweet(rng, topic):
    parts = [rng.choice(topic["phrases"])]
    parts += bag(rng, topic, rng.randint(6, 10))
    parts += [rng.choice(GENERIC) for _ in range(rng.randint(0, 2))]
    if rng.random() < 0.8:
        parts.insert(rng.randrange(len(parts) + 1), rng.choice(topic["entities"]))
    mood = rng.random()
    if mood < 0.4:
        parts.append(rng.choice(SENTIMENT["pos"]))
    elif mood < 0.8:
        parts.append(rng.choice(SENTIMENT["neg"]))
    if rng.random() < 0.2:
        parts.append("#" + rng.choice(["pfizer", "astrazeneca", "covid"]))
    text = " ".join(parts)
    if rng.random() < 0.15:
        text += "!"
    return text[0].upper() + text[1:]


TITLE_PREFIXES = ["Fact check: ", "Viral claim: ", "Misleading: ", "False: ", "Explainer: "]


def make_article(rng, topics, used, title=None):
    primary = topics[0]
    if title is None:
        template = rng.choice(primary["titles"])
        ents = primary["entities"] or ["the"]
        title = template.format(e=rng.choice(ents).capitalize())
        base = title
        for n in range(len(TITLE_PREFIXES) * 4):
            if title not in used:
                break
            title = TITLE_PREFIXES[n % len(TITLE_PREFIXES)] + base + (f" ({n // len(TITLE_PREFIXES) + 1})" if n >= len(TITLE_PREFIXES) else "")
    used.add(title)
    words = []
    for t in topics:
        words += bag(rng, t, 90 // len(topics))
    words += [rng.choice(GENERIC) for _ in range(8)]
    rng.shuffle(words)
    sentences = [" ".join(words[i:i + 12]).capitalize() + "." for i in range(0, len(words), 12)]
    return title, " ".join(sentences)


def make_vectors(rng, vocabulary):
    centers = {}
    for name in list(TWEET_TOPICS) + list(ARTICLE_TOPICS) + ["generic", "pos", "neg"]:
        v = [rng.gauss(0, 1) for _ in range(DIM)]
        n = math.sqrt(sum(x * x for x in v))
        centers[name] = [x / n for x in v]
    # Tweet and article topics that cover the same ground share a direction.
    blend = {"efficacy": "effects", "trump": "healthworkers", "warpspeed": "school"}
    for a, b in blend.items():
        centers[a] = [0.6 * x + 0.4 * y for x, y in zip(centers[a], centers[b])]

    owner = {}
    for name, topic in list(TWEET_TOPICS.items()) + list(ARTICLE_TOPICS.items()):
        for w in topic["words"] + [p for ph in topic.get("phrases", []) for p in ph.split()]:
            owner.setdefault(w, name)
    for w in GENERIC:
        owner[w] = "generic"
    for pol, words in SENTIMENT.items():
        for w in words:
            owner[w] = pol

    lines = []
    for w in sorted(vocabulary):
        c = centers.get(owner.get(w), [0.0] * DIM)
        noise = 0.9 if w in owner else 1.5
        v = [x + rng.gauss(0, noise / math.sqrt(DIM)) for x in c]
        lines.append(w + " " + " ".join(f"{x:.5f}" for x in v))
    return [f"{len(lines)} {DIM}"] + lines


def words_of(text):
    out = []
    for raw in text.lower().split():
        w = raw.strip(".,!?;:'\"()#&")
        if w.endswith("'s"):
            w = w[:-2]
        if w:
            out.append(w)
    return out


def main():
    rng = random.Random(SEED)

    tweets = []
    for topic_name, misleading, text in EXAMPLE_TWEETS:
        tweets.append({"text": text, "misleading": misleading})
    for topic_name, topic in TWEET_TOPICS.items():
        have = sum(1 for t, _, _ in EXAMPLE_TWEETS if t == topic_name)
        for _ in range(TWEETS_PER_TOPIC - have):
            tweets.append({"text": make_tweet(rng, topic), "misleading": rng.random() < 0.5})
    rng.shuffle(tweets)
    for i, t in enumerate(tweets):
        t["id"] = f"t{i:03d}"
        t["replies"] = rng.randint(0, 40)
        t["retweets"] = rng.randint(0, 120)
        t["likes"] = rng.randint(0, 500)

    articles = []
    used = set()
    for topic_name, title in EXAMPLE_ARTICLES:
        articles.append(make_article(rng, [ARTICLE_TOPICS[topic_name]], used, title))
    for topic_name, n in PURE_ARTICLES.items():
        have = sum(1 for t, _ in EXAMPLE_ARTICLES if t == topic_name)
        for _ in range(n - have):
            articles.append(make_article(rng, [ARTICLE_TOPICS[topic_name]], used))
    for a, b in MIXED_ARTICLES:
        articles.append(make_article(rng, [ARTICLE_TOPICS[a], ARTICLE_TOPICS[b]], used))
    rng.shuffle(articles)
    sites = ["factcheck.example", "verify.example", "truthdesk.example"]
    article_rows = []
    for i, (title, content) in enumerate(articles):
        article_rows.append({"id": f"a{i:03d}", "title": title, "content": content,
                             "source_site": rng.choice(sites),
                             "published": f"2021-{rng.randint(1, 9):02d}-{rng.randint(1, 28):02d}"})

    vocab = set()
    for t in tweets:
        vocab.update(words_of(t["text"]))
    for a in article_rows:
        vocab.update(words_of(a["title"] + " " + a["content"]))

    def key(row, order):
        return {k: row[k] for k in order}

    with open(HERE / "tweets.jsonl", "w") as f:
        for t in tweets:
            f.write(json.dumps(key(t, ["id", "text", "misleading", "replies", "retweets", "likes"])) + "\n")
    with open(HERE / "articles.jsonl", "w") as f:
        for a in article_rows:
            f.write(json.dumps(a) + "\n")
    with open(HERE / "vectors.txt", "w") as f:
        f.write("\n".join(make_vectors(rng, vocab)) + "\n")


if __name__ == "__main__":
    main()
