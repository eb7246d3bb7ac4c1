"""Brute-force reference implementations used to cross-check mmlint.

Nothing here calls mmlint's linker, check or tree-query code. Alias classes
come from a fixpoint merge rather than union-find, ancestors from scanning
child lists rather than the model's parent index.
"""

from __future__ import annotations

import random
import re
import string
from collections import Counter

from mmlint.artifacts import ArtifactBundle, Persona, UserStory
from mmlint.labels import PURPOSE_STOP_WORDS, AliasTable
from mmlint.model import GoalNode, MotivationalModel, build_model

_EDGES = string.punctuation + " "


def norm(text: str) -> str:
    prev = None
    while text != prev:
        prev = text
        text = re.sub(r"\s+", " ", text.casefold()).strip(_EDGES)
    return text


def alias_closure(declarations) -> list[set[str]]:
    classes = [set(norm(x) for x in d) for d in declarations]
    merged = True
    while merged:
        merged = False
        for i in range(len(classes)):
            for j in range(i + 1, len(classes)):
                if classes[i] & classes[j]:
                    classes[i] |= classes.pop(j)
                    merged = True
                    break
            if merged:
                break
    return classes


class Same:
    def __init__(self, declarations):
        self.classes = alias_closure(declarations)

    def members(self, label):
        n = norm(label)
        for c in self.classes:
            if n in c:
                return c
        return {n}

    def __call__(self, a, b):
        return norm(b) in self.members(a)


def parent_of(model: MotivationalModel, node_id):
    for candidate, node in model.nodes.items():
        if node_id in node.children:
            return candidate
    return None


def ancestor_chain(model, node_id):
    chain = [node_id]
    while (p := parent_of(model, chain[-1])) is not None:
        chain.append(p)
    return chain


def lca_bruteforce(model, ids):
    common = set.intersection(*(set(ancestor_chain(model, n)) for n in ids))
    return max(common, key=lambda n: len(ancestor_chain(model, n)))


def leaves_bruteforce(model):
    return {n for n, node in model.nodes.items() if not node.children}


def word_tokens(text):
    return set(re.findall(r"[0-9a-z]+", text.casefold())) - PURPOSE_STOP_WORDS


def expected_diagnostics(bundle: ArtifactBundle, epic_mode: str = "declared") -> Counter:
    """Multiset of (code, subject_kind, subject_id, related) the checks should emit."""
    model = bundle.model
    same = Same(bundle.aliases.declarations)
    out: Counter = Counter()

    def matches(kind, entry):
        if kind == "functional":
            if entry in model.nodes:
                return [entry]
            return [n for n, node in model.nodes.items() if same(node.label, entry)]
        pool = model.qualities if kind == "quality" else model.emotions
        return [x for x in pool if same(x, entry)]

    resolved = {}
    for s in bundle.stories:
        got = {"functional": set(), "quality": set(), "emotional": set()}
        unresolved = {"quality": set(), "emotional": set()}
        for kind, entries in (("functional", s.declared_links), ("quality", s.declared_qualities),
                              ("emotional", s.declared_emotions)):
            for entry in entries:
                m = matches(kind, entry)
                if len(m) == 1:
                    got[kind].add(m[0])
                elif len(m) > 1:
                    out[("CONFIG", "story", s.id, norm(entry))] += 1
                elif kind != "functional":
                    unresolved[kind].add(norm(entry))
        resolved[s.id] = got
        for label in unresolved["quality"]:
            out[("CP7", "story", s.id, label)] += 1
        for label in unresolved["emotional"]:
            out[("CP9", "story", s.id, label)] += 1
        if not got["functional"]:
            out[("CP4", "story", s.id, None)] += 1

    for role in model.roles:
        if not any(same(p.role, role) for p in bundle.personas):
            out[("CP1", "role", role, None)] += 1
    for p in bundle.personas:
        if not any(same(p.role, r) for r in model.roles):
            out[("CP2", "persona", p.id, p.role)] += 1
    for s in bundle.stories:
        direct = any(same(r, s.role_phrase) for r in model.roles)
        via = any(same(p.name, s.role_phrase) and any(same(r, p.role) for r in model.roles)
                  for p in bundle.personas)
        if not (direct or via):
            out[("CP2", "story", s.id, s.role_phrase)] += 1

    # epics, grouped here from scratch
    groups: dict[str, list[UserStory]] = {}
    names: dict[str, str] = {}
    for s in bundle.stories:
        if s.epic is None:
            continue
        groups.setdefault(norm(s.epic), []).append(s)
        names.setdefault(norm(s.epic), s.epic)
    for key, members in groups.items():
        name = names[key]
        linked = set().union(*(resolved[s.id]["functional"] for s in members))
        if not linked:
            continue
        declared = next((s.epic_node for s in members if s.epic_node), None)
        pin = None
        if declared is None and epic_mode == "by-name":
            m = [n for n, node in model.nodes.items() if same(node.label, name)]
            if len(m) > 1:
                out[("CONFIG", "epic", name, name)] += 1
                continue
            pin = m[0] if m else None
        elif declared is not None:
            m = matches("functional", declared)
            if len(m) > 1:
                out[("CONFIG", "epic", name, declared)] += 1
                continue
            if not m:
                out[("CP3", "epic", name, declared)] += 1
                continue
            pin = m[0]
        if pin is not None:
            for s in members:
                if any(pin not in ancestor_chain(model, n) for n in resolved[s.id]["functional"]):
                    out[("CP3", "story", s.id, name)] += 1
            continue
        branches = {ancestor_chain(model, n)[-2] for n in linked if n != model.root}
        if lca_bruteforce(model, linked) == model.root and len(branches) > 1:
            out[("CP3", "epic", name, None)] += 1

    covered = set().union(set(), *(r["functional"] for r in resolved.values()))
    for leaf in leaves_bruteforce(model):
        if leaf not in covered:
            out[("CP5", "goal", leaf, model.nodes[leaf].label)] += 1
    for kind, code, pool in (("quality", "CP6", model.qualities), ("emotional", "CP8", model.emotions)):
        hit = set().union(set(), *(r[kind] for r in resolved.values()))
        for label in pool:
            if label not in hit:
                out[(code, "goal", label, None)] += 1

    vocab = set()
    for label in [n.label for n in model.nodes.values()] + list(model.qualities) + list(model.emotions):
        for spelling in same.members(label) | {label}:
            vocab |= word_tokens(spelling)
    for s in bundle.stories:
        if s.purpose and not word_tokens(s.purpose) & vocab:
            out[("ADV-PURPOSE", "story", s.id, None)] += 1
    return out


# -- random bundles ----------------------------------------------------------------

GOAL_WORDS = ["Alpha", "Beta", "Gamma", "Delta", "Omega", "Track", "Export"]
ROLE_WORDS = ["Student", "Developer", "Manager", "Tutor", "Client", "Admin"]
QUALITY_WORDS = ["Reliable", "Fast", "Secure", "Helpful", "Easy to use", "Ease of use"]
EMOTION_WORDS = ["Happy", "Calm", "Confident", "Safe", "Worried", "Proud"]
PERSONA_NAMES = ["Priya", "Sam", "Alex", "Jo"]


def spelling(rng: random.Random, label: str) -> str:
    """A variant of ``label`` that normalises to the same text."""
    choice = rng.randrange(4)
    if choice == 0:
        return label.upper()
    if choice == 1:
        return f"  {label.lower()} "
    if choice == 2:
        return label + "."
    return label


def _distinct_sample(rng, pool, k):
    picked = rng.sample(pool, min(k, len(pool)))
    return [spelling(rng, p) for p in picked]


def random_model(rng: random.Random, max_nodes=8, min_roles=0) -> MotivationalModel:
    n = rng.randint(1, max_nodes)
    ids = rng.sample([f"N{i}" for i in range(60)] + ["Alpha", "x1", "G1"], n)
    parents = [None] + [rng.randrange(i) for i in range(1, n)]
    children = {i: [] for i in range(n)}
    for i, p in enumerate(parents):
        if p is not None:
            children[p].append(i)
    labels = [" ".join(rng.sample(GOAL_WORDS, rng.randint(1, 2))) for _ in range(n)]
    nodes = [GoalNode(ids[i], spelling(rng, labels[i]), tuple(ids[c] for c in children[i])) for i in range(n)]
    rng.shuffle(nodes)
    return build_model(
        ids[0],
        nodes,
        roles=_distinct_sample(rng, ROLE_WORDS, rng.randint(min_roles, 6)),
        qualities=_distinct_sample(rng, QUALITY_WORDS, rng.randint(0, 4)),
        emotions=_distinct_sample(rng, EMOTION_WORDS, rng.randint(0, 4)),
        concerns=_distinct_sample(rng, EMOTION_WORDS, rng.randint(0, 2)),
    )


def random_bundle(rng: random.Random) -> ArtifactBundle:
    model = random_model(rng)
    node_ids = list(model.nodes)
    node_labels = [model.nodes[n].label for n in node_ids]

    personas = [
        Persona(f"P{i}", rng.choice(PERSONA_NAMES), spelling(rng, rng.choice(ROLE_WORDS + ["Guest"])))
        for i in range(rng.randint(0, 4))
    ]
    epic_pins = {
        e: rng.choice([None, None, rng.choice(node_ids), spelling(rng, rng.choice(node_labels)), "Nowhere"])
        for e in ["E1", "E2", "Alpha"]
    }
    stories = []
    for i in range(rng.randint(0, 10)):
        epic = rng.choice([None, "E1", "E2", "Alpha"])
        links = [
            rng.choice([rng.choice(node_ids), spelling(rng, rng.choice(node_labels)), "Unknown goal"])
            for _ in range(rng.randint(0, 3))
        ]
        purpose = None
        if rng.random() < 0.6:
            purpose = " ".join(rng.choice(GOAL_WORDS + QUALITY_WORDS + ["progress", "the", "with", "report"])
                               for _ in range(rng.randint(1, 3)))
        stories.append(UserStory(
            id=f"S{i}",
            role_phrase=spelling(rng, rng.choice(ROLE_WORDS + PERSONA_NAMES + ["user"])),
            want=" ".join(rng.sample(GOAL_WORDS, 2)).lower(),
            purpose=purpose,
            epic=epic,
            declared_links=tuple(links),
            declared_qualities=tuple(spelling(rng, rng.choice(QUALITY_WORDS)) for _ in range(rng.randint(0, 2))),
            declared_emotions=tuple(spelling(rng, rng.choice(EMOTION_WORDS)) for _ in range(rng.randint(0, 2))),
            epic_node=epic_pins[epic] if epic else None,
        ))
    vocab = GOAL_WORDS + ROLE_WORDS + QUALITY_WORDS + EMOTION_WORDS + PERSONA_NAMES
    aliases = AliasTable(
        [rng.sample(vocab, rng.randint(2, 3)) for _ in range(rng.randint(0, 3))]
        + ([["ease of use", "easy to use"]] if rng.random() < 0.5 else [])
    )
    return ArtifactBundle(model, personas, stories, None, aliases)
