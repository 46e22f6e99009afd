"""Coder backends: prompt templates, a remote chat-completion client, and a
deterministic offline mock.

The template chain mirrors a staged screening-and-coding pipeline: triage
boilerplate, check topical relevance, elicit a confidence judgement, code
the passage on its own, then reassess against the article summary. Each
step can feed a ``note`` about earlier red flags into the next prompt.
A few-shot variant codes in one step given exemplar codes for the
passage's semantic cluster. The mock backend walks the same chain but
answers from a seeded Zipf vocabulary, so the whole pipeline runs offline
and reproducibly.
"""

from __future__ import annotations

import json
import ast
import os
import re
import time
import urllib.error
import urllib.request
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from string import Template
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import PromptBindingError, RateLimitError, ResponseParseError, TransportError
from .ingest import Passage

# --- templates ------------------------------------------------------------

_TEMPLATE_TEXTS: dict[str, str] = {
    "round1": (
        'Read a passage from a news article summarized here: ### $summary ### passage: '
        '### $excerpt ### In 12 words or less, give the theme of this specific passage '
        'as it embodies, relates to or reflects attitudes towards refugees in Malaysia, '
        'or return "Irrelevant"'
    ),
    "triage_caption": (
        'Read a passage from a news article ### $excerpt ### Is this passage a piece of '
        'text such as 1. a disclaimer of opinion, 2. a photo caption. Or is it a complete '
        'passage from the body of a news article? Respond only in the following python '
        'dictionary format: {"1. disclaimer?": True/False, "2. caption?": True/False, '
        '"Body?": True/False }'
    ),
    "triage_relevance": (
        'Read a passage from a news article ### $excerpt ### Step by step, answer the '
        'following questions: 1. Does the passage explicitly, unambiguously discuss '
        'refugees? Note: most passages are not about refugees. 2. Does the passage '
        'explicitly, unambiguously reference Malaysia? Note: most passages are about '
        'other countries.$note Now respond in the following Python dictionary format: '
        '{"1. Refugees?": "Yes./"/"No.", "2. Malaysia?": "Yes./"/"No."}'
    ),
    "relevance_confidence": (
        'Read a passage from a news article ### $excerpt ### Answer step by step: 1. '
        'Might this passage be relevant to attitudes towards refugees in Malaysia? If it '
        'clearly is, answer "Yes." If it might be, depending on the context of the '
        'article the passage is from--eg. the identity of the subject and their '
        'location--answer "Maybe." If it is definitely irrelevant regardless of context, '
        'answer "No." $note 2. If "No." or "Maybe.", in 15 words or less give any and '
        'all reasons why it might be irrelevant--both those provided earlier and any '
        'others you identify, such as irrelevant output from a content management system '
        'or editorial annotations to the article. Respond in the following python '
        'dictionary format: {"1. Relevant?": "Yes."/"Maybe."/"No.", "2. Why Not?": '
        'string or None} '
    ),
    "socratic_code": (
        'Read a passage from a news article ### $excerpt ### Give the theme of this '
        'passage as it embodies, relates to or reflects attitudes towards refugees in '
        'Malaysia if it is relevant to that topic. If it is not relevant, simply '
        'summarize the passage in a few words. Note that this passage may simply be text '
        'from the web interface and not from an article at all. Before answering, '
        'analyze step by step: 1. in 14 words or less, return the theme. Do not offer a '
        'generic theme like "attitudes towards refugees in Malaysia", but give a '
        'specific theme. 2. Whose attitudes are being reflected? Examples: the Malaysian '
        'government, The Bangladeshi government, Malaysians, NGOs, the author. 3. Who is '
        'the target of the attitudes? Examples: migrant workers, Myanmar, the Rohingya, '
        'the government, UNHCR. 4. What is the valence of attitudes towards the target, '
        'if any?: "Sympathetic.", "Hostile.", or "N/A". $note Finally, Respond ONLY in '
        'the following python dictionary format: {"1. Theme": stringval1, "2. Whose '
        'Attitude?": stringval2, "3. Target": stringval3, "4. Valence": '
        '"Sympathetic."/"Hostile."/"N/A"}'
    ),
    "summary_reassess": (
        'Read a passage from a news article ### $excerpt ### The theme of this passage '
        'was coded as ### $precode ### but this analysis ignores the article summary and '
        'is therefore unreliable. Reassess the theme of this passage as it relates to '
        'attitudes towards refugees in Malaysia, given the context of this summary of '
        'the article it came from ### $summary ### Before answering, analyze step by '
        'step: 1. in 14 words or less, return the reassessed theme (if relevant) as it '
        'relates to attitudes towards refugees in Malaysia, or return None. Do not give '
        'a generic theme like "attitudes towards refugees in Malaysia", but provide a '
        'specific theme. If irrelevant, return None for all further questions. If '
        'relevant, 2. Whose attitudes are being reflected? Examples: the government, '
        'Malaysians, NGOs, the author. 3. Who is the target of the attitudes? Examples: '
        'the Rohingya, the government, UNHCR. 4. What is the valence of the attitude '
        'towards the target, if any?: "Sympathetic.", "Hostile.", or "N/A". $note Once '
        'again, the passage to code is ### $excerpt ### Finally, Respond ONLY in the '
        'following python dictionary format: {"1. Theme": stringval1/None, "2. Whose '
        'Attitude?":stringval2,"3. Target":stringval3,"4. Valence": '
        '"Sympathetic."/"Hostile."/"N/A"}'
    ),
    "cluster_summary": (
        'Read a list of four themes from a cluster of passages ### $codes ### Step by '
        'step, answer the following: 1 Are all of these themes both present and relevant '
        'to attitudes towards refugees in Malaysia? "All are."/"None are."/"Some are.". '
        'If irrelevant, return none to all further questions. 2. If relevant, return the '
        'overarching theme as it relates to attitudes towards refugees in Malaysia, or '
        'return None. Do not give a generic theme like "attitudes towards refugees in '
        'Malaysia", but provide a specific and detailed theme. If relevant, 3. Whose '
        'attitudes are being reflected? Examples: the government, Malaysians, NGOs, the '
        'author. 4. Who is the target of the attitudes? Examples: the Rohingya, the '
        'government, UNHCR. 5. What is the overall valence, if any? Finally, Respond '
        'ONLY in the following python dictionary format: {"1. Are Passages Relevant?": '
        '"All are."/"None are."/"Some are.", "2. Theme": stringval1/None, "3. Whose '
        'Attitude?":stringval2,"4. Target":stringval3,"5. Valence": '
        '"Sympathetic."/"Hostile."/"N/A"}'
    ),
    "final_fewshot": (
        'Read this passage from a news article ### $excerpt ### If relevant, give the '
        'theme of this SPECIFIC passage as it embodies, relates to, or reflects '
        'attitudes towards refugees in Malaysia. The following summary of the excerpted '
        'article may provide context for the passage (e.g. who is being discussed and '
        'where events are occurring): ### $summary ### Here is an overview of how '
        'several passages similar to this one have been coded: ### $relevant ### DO NOT '
        'copy this coding verbatim, but use it as reference and be careful if only some '
        'or none of the similar passages were deemed relevant. Before answering, analyze '
        'step by step: 1. in 12 words or less, return the theme (if relevant) as it '
        'relates to attitudes towards refugees in Malaysia, or return None. Do not give '
        'a generic theme like "attitudes towards refugees in Malaysia", but provide a '
        'specific single theme. If irrelevant, return None for all further questions. If '
        'relevant, 2. Whose attitudes are being reflected? Examples: the government, '
        'Malaysians, NGOs, the author. 3. Who is the target of the attitudes? Examples: '
        'the Rohingya, the government, UNHCR. 4. What is the valence of attitudes '
        'towards the target, if any?: "Sympathetic.", "Hostile.", or "N/A". Once again, '
        'the passage to code is ### $excerpt ### Finally, Respond ONLY in the following '
        'python dictionary format: {"1. Theme": None/stringval1, "2. Whose '
        'Attitude?":None/stringval2,"3. Target":None/stringval3, 4. Valence": '
        '"Sympathetic."/"Hostile."/"N/A"}'
    ),
}

CRITERIA_DISCLAIMER = "Passage is a disclaimer of personal opinion, "
CRITERIA_CAPTION = " Passage is a photo caption, "
CRITERIA_NOT_REFUGEES = " Not about refugees, "
CRITERIA_NOT_MALAYSIA = " Not about Malaysia, "


def flag_note(criteria: Sequence[str]) -> str:
    """Note injected after triage red flags; empty when nothing was flagged."""
    if not criteria:
        return ""
    return (
        "Note: this passage has been flagged as possibly meeting the following criteria "
        "for irrelevance: " + "".join(criteria) + ' ### If any of these criteria are '
        'true, you should answer "No." or "Maybe. "'
    )


def relevance_note(level: str, reason: str) -> str:
    """Note threaded into the standalone coding step from the relevance verdict."""
    if level == "Yes":
        return ""
    verb = "might be" if level == "Maybe" else "is"
    return (
        f" Previous analysis found that this passage {verb} irrelevant for this "
        f"reason: {reason}### Take this into account."
    )


def reassess_note(level: str, reason: str) -> str:
    """Note for the summary-reassessment step; one text covers both verdicts."""
    if level == "Yes":
        return ""
    return (
        "Previous analysis found that this SPECIFIC passage might be irrelevant for "
        f"this reason: {reason}### Does the summary clarify this?."
    )


@dataclass(frozen=True)
class PromptTemplate:
    name: str
    text: str

    @property
    def placeholders(self) -> tuple[str, ...]:
        return tuple(
            sorted({m.group(1) for m in re.finditer(r"\$(\w+)", self.text)})
        )

    def render(self, **bindings: str) -> str:
        """Substitute placeholders verbatim (no escaping)."""
        try:
            return Template(self.text).substitute(bindings)
        except KeyError as exc:
            raise PromptBindingError(exc.args[0], template=self.name)


TEMPLATES: dict[str, PromptTemplate] = {
    name: PromptTemplate(name, text) for name, text in _TEMPLATE_TEXTS.items()
}

SOCRATIC_CHAIN = (
    "triage_caption",
    "triage_relevance",
    "relevance_confidence",
    "socratic_code",
    "summary_reassess",
)
FEWSHOT_CHAIN = ("final_fewshot",)
ROUND1_CHAIN = ("round1",)


def render_prompt(template: str | PromptTemplate, bindings: dict[str, str]) -> str:
    tpl = TEMPLATES[template] if isinstance(template, str) else template
    return tpl.render(**bindings)


# --- responses ------------------------------------------------------------

VALENCES = ("Sympathetic", "Hostile", "N/A")


@dataclass(frozen=True)
class CodeResponse:
    """Parsed coding reply; an absent theme means the passage was judged irrelevant."""

    theme: str | None = None
    whose_attitude: str | None = None
    target: str | None = None
    valence: str | None = None

    @property
    def relevant(self) -> bool:
        return self.theme is not None

    def format(self) -> str:
        def enc(v):
            return "None" if v is None else json.dumps(v, ensure_ascii=False)

        valence = "None" if self.valence is None else json.dumps(self.valence + ".")
        return (
            '{"1. Theme": ' + enc(self.theme)
            + ', "2. Whose Attitude?": ' + enc(self.whose_attitude)
            + ', "3. Target": ' + enc(self.target)
            + ', "4. Valence": ' + valence + "}"
        )


_DICT_REGION = re.compile(r"\{.*\}", re.DOTALL)


def _normalize_valence(value) -> str | None:
    if value is None:
        return None
    text = str(value).strip().rstrip(".").strip()
    for v in VALENCES:
        if text.lower() == v.lower():
            return v
    return None if text.lower() in ("", "none") else text.rstrip(".")


def parse_response(raw: str) -> CodeResponse:
    """Pull the first dictionary-shaped region out of a reply and normalize it.

    Tolerates surrounding prose, Python or JSON literal syntax, and
    trailing periods on valence labels. A null/None theme marks the
    passage irrelevant.
    """
    match = _DICT_REGION.search(raw)
    if not match:
        raise ResponseParseError("no dictionary-shaped region in reply", raw)
    region = match.group(0)
    obj = None
    for parser in (ast.literal_eval, json.loads):
        try:
            obj = parser(region)
            break
        except Exception:
            continue
    if not isinstance(obj, dict):
        raise ResponseParseError("dictionary-shaped region failed to parse", raw)

    def pick(*needles: str):
        for key, value in obj.items():
            lowered = str(key).lower()
            if any(n in lowered for n in needles):
                return value
        return None

    def clean(value) -> str | None:
        if value is None:
            return None
        text = str(value).strip()
        return None if text.lower() in ("", "none", "null") else text

    return CodeResponse(
        theme=clean(pick("theme")),
        whose_attitude=clean(pick("attitude")),
        target=clean(pick("target")),
        valence=_normalize_valence(clean(pick("valence"))),
    )


def parse_round1_response(raw: str) -> CodeResponse:
    """Round-1 replies are a bare theme string or the word Irrelevant."""
    text = raw.strip().strip('"').strip()
    if not text or text.lower().rstrip(".") == "irrelevant":
        return CodeResponse()
    return CodeResponse(theme=text)


# --- backends ---------------------------------------------------------------


class MockCoder:
    """Offline coder with a seeded Zipf vocabulary.

    Each passage yields 0-6 codes (expected count scales with passage
    length); each code slot walks the template chain with deterministic
    replies, so prompt rendering, note threading, and parsing are all
    exercised without a network. Passages containing tell-tale boilerplate
    markers ("photo:", "photo caption", "disclaimer", "views expressed")
    are flagged at triage, mirroring the screening behaviour of a real
    backend.
    """

    kind = "mock"

    def __init__(self, seed: int = 0, vocab_size: int = 200, zipf_exponent: float = 1.1,
                 mean_codes_per_kchar: float = 3.0):
        self.seed = seed
        self.vocab = [f"mock code {i:03d}" for i in range(1, vocab_size + 1)]
        ranks = np.arange(1, vocab_size + 1, dtype=float)
        weights = ranks**-zipf_exponent
        self.probabilities = weights / weights.sum()
        self.mean_codes_per_kchar = mean_codes_per_kchar

    def _rng(self, passage_id: str, slot: int) -> np.random.Generator:
        digest = int.from_bytes(passage_id.encode("utf-8")[-8:].rjust(8, b"\0"), "big")
        return np.random.default_rng([self.seed, digest % (2**32), slot])

    def n_slots(self, passage: Passage) -> int:
        rng = self._rng(passage.article_id + ":" + str(passage.index), 0)
        lam = self.mean_codes_per_kchar * len(passage.text) / 1000.0
        return int(min(6, rng.poisson(lam)))

    def _flags(self, passage: Passage) -> list[str]:
        text = passage.text.lower()
        flags = []
        if "disclaimer" in text or "views expressed" in text:
            flags.append(CRITERIA_DISCLAIMER)
        if "photo:" in text or "photo caption" in text:
            flags.append(CRITERIA_CAPTION)
        return flags

    def _draw_code(self, passage: Passage, slot: int) -> str:
        rng = self._rng(passage.article_id + ":" + str(passage.index), slot + 1)
        return self.vocab[int(rng.choice(len(self.vocab), p=self.probabilities))]

    def respond(self, step: str, prompt: str, passage: Passage, slot: int = 0) -> str:
        flags = self._flags(passage)
        if step == "triage_caption":
            return (
                '{"1. disclaimer?": %s, "2. caption?": %s, "Body?": %s }'
                % (
                    CRITERIA_DISCLAIMER in flags,
                    CRITERIA_CAPTION in flags,
                    not flags,
                )
            )
        if step == "triage_relevance":
            return '{"1. Refugees?": "Yes.", "2. Malaysia?": "Yes."}'
        if step == "relevance_confidence":
            if flags:
                return (
                    '{"1. Relevant?": "Maybe.", "2. Why Not?": "Passage looks like '
                    'page boilerplate"}'
                )
            return '{"1. Relevant?": "Yes.", "2. Why Not?": None}'
        if step == "round1":
            return self._draw_code(passage, slot)
        # coding steps share one deterministic draw so precode == final theme
        code = self._draw_code(passage, slot)
        return CodeResponse(
            theme=code, whose_attitude="the author", target="the Rohingya",
            valence="Sympathetic",
        ).format()


@dataclass(frozen=True)
class RemoteConfig:
    """Chat-completion endpoint settings; the token is read from the environment."""

    url: str
    model: str
    token_env: str = "CODER_API_TOKEN"
    timeout: float = 30.0
    max_retries: int = 3
    temperature: float = 0.0
    max_in_flight: int = 4


def _urllib_transport(url: str, headers: dict, body: bytes, timeout: float):
    request = urllib.request.Request(url, data=body, headers=headers, method="POST")
    try:
        with urllib.request.urlopen(request, timeout=timeout) as resp:
            return resp.status, resp.read().decode("utf-8")
    except urllib.error.HTTPError as exc:
        return exc.code, exc.read().decode("utf-8", errors="replace")


class RemoteCoder:
    """Minimal chat-completion client: single user message per step.

    Request body: {"model", "messages": [{"role": "user", "content": prompt}],
    "temperature"}; reply must carry choices[0].message.content. Retries
    transport failures and 5xx with exponential backoff; 429/402 raise the
    rate-limit error distinctly.
    """

    kind = "remote"

    def __init__(self, config: RemoteConfig, transport: Callable = _urllib_transport,
                 sleep: Callable[[float], None] = time.sleep):
        self.config = config
        self.transport = transport
        self.sleep = sleep

    def n_slots(self, passage: Passage) -> int:
        return 1

    def respond(self, step: str, prompt: str, passage: Passage, slot: int = 0) -> str:
        token = os.environ.get(self.config.token_env, "")
        headers = {"Content-Type": "application/json"}
        if token:
            headers["Authorization"] = f"Bearer {token}"
        body = json.dumps(
            {
                "model": self.config.model,
                "messages": [{"role": "user", "content": prompt}],
                "temperature": self.config.temperature,
            }
        ).encode("utf-8")
        last_error: Exception | None = None
        for attempt in range(self.config.max_retries):
            if attempt:
                self.sleep(0.5 * 2 ** (attempt - 1))
            try:
                status, text = self.transport(
                    self.config.url, headers, body, self.config.timeout
                )
            except Exception as exc:
                last_error = TransportError(f"transport failure: {exc}")
                continue
            if status in (429, 402):
                last_error = RateLimitError(f"rate/budget limit (HTTP {status})")
                continue
            if status >= 500:
                last_error = TransportError(f"server error (HTTP {status})")
                continue
            if status != 200:
                raise TransportError(f"HTTP {status}: {text[:200]}")
            try:
                payload = json.loads(text)
                return payload["choices"][0]["message"]["content"]
            except (json.JSONDecodeError, KeyError, IndexError, TypeError):
                raise TransportError(f"malformed completion payload: {text[:200]}")
        raise last_error if last_error else TransportError("no attempts made")


# --- chain execution --------------------------------------------------------


@dataclass(frozen=True)
class CodingRun:
    """Outcome of coding a batch: per-passage responses plus recorded errors."""

    results: tuple[tuple[str, CodeResponse], ...]
    errors: tuple[tuple[str, str], ...] = ()

    def __iter__(self) -> Iterator[tuple[str, CodeResponse]]:
        return iter(self.results)


def _passage_key(passage: Passage) -> str:
    return f"{passage.article_id}:{passage.index:04d}"


def _run_chain(
    passage: Passage,
    backend,
    chain: Sequence[str],
    summary: str,
    fewshot: str,
    slot: int,
) -> CodeResponse:
    flags: list[str] = []
    level, reason, precode = "Yes", "", None
    response = CodeResponse()
    for step in chain:
        bindings = {"excerpt": passage.text}
        if step == "round1":
            bindings["summary"] = summary
            raw = backend.respond(step, render_prompt(step, bindings), passage, slot)
            response = parse_round1_response(raw)
            continue
        if step == "triage_caption":
            raw = backend.respond(step, render_prompt(step, bindings), passage, slot)
            parsed = _parse_bool_dict(raw)
            if parsed.get("disclaimer"):
                flags.append(CRITERIA_DISCLAIMER)
            if parsed.get("caption"):
                flags.append(CRITERIA_CAPTION)
            continue
        if step == "triage_relevance":
            bindings["note"] = flag_note(flags)
            raw = backend.respond(step, render_prompt(step, bindings), passage, slot)
            parsed = _parse_yes_no_dict(raw)
            if parsed.get("refugees") == "No":
                flags.append(CRITERIA_NOT_REFUGEES)
            if parsed.get("malaysia") == "No":
                flags.append(CRITERIA_NOT_MALAYSIA)
            continue
        if step == "relevance_confidence":
            bindings["note"] = flag_note(flags)
            raw = backend.respond(step, render_prompt(step, bindings), passage, slot)
            level, reason = _parse_relevance(raw)
            continue
        if step == "socratic_code":
            bindings["note"] = relevance_note(level, reason)
            raw = backend.respond(step, render_prompt(step, bindings), passage, slot)
            response = parse_response(raw)
            precode = response.theme
            continue
        if step == "summary_reassess":
            bindings["summary"] = summary
            bindings["precode"] = precode if precode is not None else "None"
            bindings["note"] = reassess_note(level, reason)
            raw = backend.respond(step, render_prompt(step, bindings), passage, slot)
            response = parse_response(raw)
            continue
        if step == "final_fewshot":
            bindings["summary"] = summary
            bindings["relevant"] = fewshot
            raw = backend.respond(step, render_prompt(step, bindings), passage, slot)
            response = parse_response(raw)
            continue
        raise ValueError(f"unknown chain step {step!r}")
    return response


def _parse_bool_dict(raw: str) -> dict[str, bool]:
    match = _DICT_REGION.search(raw)
    if not match:
        raise ResponseParseError("no dictionary-shaped region in triage reply", raw)
    obj = ast.literal_eval(match.group(0))
    out = {}
    for key, value in obj.items():
        lowered = str(key).lower()
        if "disclaimer" in lowered:
            out["disclaimer"] = bool(value)
        elif "caption" in lowered:
            out["caption"] = bool(value)
    return out


def _parse_yes_no_dict(raw: str) -> dict[str, str]:
    match = _DICT_REGION.search(raw)
    if not match:
        raise ResponseParseError("no dictionary-shaped region in relevance reply", raw)
    obj = ast.literal_eval(match.group(0))
    out = {}
    for key, value in obj.items():
        lowered = str(key).lower()
        name = "refugees" if "refugee" in lowered else "malaysia" if "malaysia" in lowered else None
        if name:
            out[name] = str(value).strip().rstrip(".")
    return out


def _parse_relevance(raw: str) -> tuple[str, str]:
    match = _DICT_REGION.search(raw)
    if not match:
        raise ResponseParseError("no dictionary-shaped region in confidence reply", raw)
    obj = ast.literal_eval(match.group(0))
    level, reason = "Yes", ""
    for key, value in obj.items():
        lowered = str(key).lower()
        if "relevant" in lowered:
            level = str(value).strip().rstrip(".")
        elif "why" in lowered and value is not None:
            reason = str(value)
    return level, reason


def code_passages(
    passages: Sequence[Passage],
    backend,
    template_chain: Sequence[str] = SOCRATIC_CHAIN,
    summaries: dict[str, str] | None = None,
    fewshot_context: dict[str, str] | None = None,
) -> CodingRun:
    """Run the template chain over every passage.

    ``summaries`` maps article ids to their summaries (required whenever a
    chain step binds one); ``fewshot_context`` maps passage keys
    ("article:index") to the exemplar-coding overview bound as the
    few-shot reference. Remote failures are recorded per passage and the
    batch continues; the mock backend never fails. Results are ordered by
    passage key. Remote batches honour the configured in-flight cap.
    """
    summaries = summaries or {}
    fewshot_context = fewshot_context or {}
    ordered = sorted(passages, key=_passage_key)

    def work(passage: Passage) -> tuple[str, list[CodeResponse], str | None]:
        key = _passage_key(passage)
        summary = summaries.get(passage.article_id, "")
        fewshot = fewshot_context.get(key, "[]")
        responses = []
        try:
            for slot in range(backend.n_slots(passage)):
                responses.append(
                    _run_chain(passage, backend, template_chain, summary, fewshot, slot)
                )
        except TransportError as exc:
            return key, [], f"{type(exc).__name__}: {exc}"
        return key, responses, None

    cap = getattr(getattr(backend, "config", None), "max_in_flight", 1)
    if backend.kind == "remote" and cap > 1 and len(ordered) > 1:
        with ThreadPoolExecutor(max_workers=cap) as pool:
            outcomes = list(pool.map(work, ordered))
    else:
        outcomes = [work(p) for p in ordered]

    results = []
    errors = []
    for key, responses, error in outcomes:
        if error is not None:
            errors.append((key, error))
        for response in responses:
            results.append((key, response))
    return CodingRun(results=tuple(results), errors=tuple(errors))
