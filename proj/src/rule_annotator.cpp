// Copyright 2026 The AlignVQ Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "alignvq/rule_annotator.hpp"

#include <cctype>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "alignvq/text.hpp"

namespace alignvq {
namespace {

using WordSet = std::unordered_set<std::string_view>;

const WordSet kDeterminers = {
    "a",     "an",  "the",   "some",    "this",  "that",    "these",
    "those", "each", "every", "another", "any",   "no",      "his",
    "its",   "their", "my",  "your",    "our",   "both",    "all",
    "several", "many", "her"};

const WordSet kPronouns = {
    "i",        "you",      "he",         "she",     "it",      "we",
    "they",     "me",       "him",        "us",      "them",    "someone",
    "something", "everyone", "everything", "somebody", "nobody", "nothing",
    "himself",  "herself",  "itself",     "themselves", "who",  "what",
    "which",    "one"};

const WordSet kNumerals = {
    "zero",    "two",     "three",    "four",     "five",    "six",
    "seven",   "eight",   "nine",     "ten",      "eleven",  "twelve",
    "thirteen", "fourteen", "fifteen", "sixteen", "seventeen", "eighteen",
    "nineteen", "twenty",  "thirty",  "forty",    "fifty",   "hundred",
    "dozen"};

const WordSet kPrepositions = {
    "on",      "in",      "at",      "under",   "over",    "near",
    "behind",  "above",   "below",   "beneath", "beside",  "between",
    "among",   "into",    "onto",    "across",  "through", "from",
    "for",     "with",    "without", "of",      "by",      "along",
    "around",  "inside",  "outside", "against", "toward",  "towards",
    "upon",    "atop",    "underneath", "about", "like",   "past",
    "to",      "during",  "within",  "amid",    "beyond",  "throughout"};

const WordSet kConjunctions = {"and", "or", "but", "nor"};
const WordSet kSubordinators = {"while", "as", "because", "if", "when",
                                "where", "whereas", "although"};

const WordSet kAuxiliaries = {
    "is",  "are",  "was",   "were",  "am",     "be",    "been",
    "being", "has", "have", "had",   "do",     "does",  "did",
    "can", "could", "will", "would", "should", "may",   "might",
    "must"};

const WordSet kAdverbs = {
    "very", "high",  "up",    "down",  "out",    "away",   "together",
    "here", "there", "also",  "too",   "really", "quite",  "just",
    "almost", "nearly", "still", "again", "outdoors", "indoors", "nearby",
    "inside", "outside", "upside", "back", "forward", "so", "then"};

const WordSet kAdjectives = {
    "black",    "white",     "red",       "green",     "blue",
    "yellow",   "brown",     "pink",      "purple",    "orange",
    "gray",     "grey",      "silver",    "golden",    "beige",
    "big",      "small",     "large",     "little",    "tall",
    "short",    "long",      "young",     "old",       "new",
    "heavy",    "light",     "dark",      "bright",    "wooden",
    "plush",    "empty",     "full",      "open",      "closed",
    "happy",    "sad",       "fat",       "thin",      "huge",
    "tiny",     "giant",     "cute",      "pretty",    "ugly",
    "wet",      "dry",       "hot",       "cold",      "warm",
    "fresh",    "clean",     "dirty",     "round",     "square",
    "striped",  "spotted",   "fluffy",    "furry",     "shiny",
    "oncoming", "outgoing",  "few",       "other",     "same",
    "different", "busy",     "crowded",   "sunny",     "cloudy",
    "snowy",    "grassy",    "sandy",     "rocky",     "tasty",
    "modern",   "ancient",   "antique",   "vintage",   "famous",
    "wild",     "angry",     "single",    "double",    "multiple",
    "various",  "calm",      "quiet",     "loud",      "low",
    "wide",     "narrow",    "deep",      "shallow",   "soft",
    "hard",     "smooth",    "rough",     "sharp",     "blurry",
    "first",    "second",    "third",     "last",      "left",
    "right",    "electric",  "digital",   "male",      "female",
    "adult",    "elderly",   "royal",     "lush",      "tall",
    "leafy",    "ripe",      "raw",       "cooked",    "frozen",
    "broken",   "metallic",  "transparent", "dense",   "sliced",
    "real",     "fake",      "upper",     "lower",     "front",
    "rear",     "main",      "whole",     "half",      "huge",
    "dead",     "alive",     "asleep",    "awake",     "stuffed"};

// Base, third-person and past forms of verbs common in captions.
const WordSet kVerbs = {
    "sit",     "sits",     "sat",      "stand",    "stands",   "stood",
    "hold",    "holds",    "held",     "ride",     "rides",    "rode",
    "eat",     "eats",     "ate",      "play",     "plays",    "swing",
    "swings",  "look",     "looks",    "wear",     "wears",    "wore",
    "lie",     "lies",     "lay",      "lays",     "fly",      "flies",
    "flew",    "run",      "runs",     "ran",      "walk",     "walks",
    "jump",    "jumps",    "throw",    "throws",   "threw",    "catch",
    "catches", "caught",   "carry",    "carries",  "surround", "surrounds",
    "contain", "contains", "cross",    "crosses",  "pose",     "poses",
    "watch",   "watches",  "drive",    "drives",   "drove",    "go",
    "goes",    "went",     "make",     "makes",    "made",     "take",
    "takes",   "took",     "lean",     "leans",    "hang",     "hangs",
    "hung",    "rest",     "rests",    "show",     "shows",    "cover",
    "covers",  "fill",     "fills",    "face",     "faces",    "kick",
    "kicks",   "hit",      "hits",     "cut",      "cuts",     "drink",
    "drinks",  "drank",    "read",     "reads",    "talk",     "talks",
    "climb",   "climbs",   "swim",     "swims",    "swam",     "sleep",
    "sleeps",  "slept",    "wait",     "waits",    "park",     "parks",
    "pull",    "pulls",    "push",     "pushes",   "grow",     "grows",
    "grew",    "see",      "sees",     "saw",      "get",      "gets",
    "got",     "give",     "gives",    "gave",     "put",      "puts",
    "sing",    "sings",    "sang",     "dance",    "dances",   "feed",
    "feeds",   "fed",      "cook",     "cooks",    "serve",    "serves",
    "smile",   "smiles",   "stare",    "stares",   "graze",    "grazes",
    "chase",   "chases",   "bite",     "bites",    "lick",     "licks",
    "paint",   "paints",   "point",    "points",   "touch",    "touches"};

// Multi-word prepositions whose first word heads the phrase.
const WordSet kCompoundPrepHeads = {"next", "close", "due", "out"};

bool is_punct_char(char c) {
  switch (c) {
    case '.': case ',': case '!': case '?': case ';': case ':': case '"':
    case '(': case ')': case '[': case ']': case '{': case '}':
      return true;
    default:
      return false;
  }
}

bool is_space_char(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() > suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '.' && c != ',') {
      return false;
    }
  }
  return std::isdigit(static_cast<unsigned char>(s.front())) != 0;
}

bool is_capitalized(std::string_view s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s.front()));
}

struct RawToken {
  std::string text;
  std::string lower;
  std::size_t start = 0;
  std::size_t end = 0;
};

// Whitespace split with punctuation and possessive clitics broken off.
std::vector<RawToken> tokenize(std::string_view t) {
  std::vector<RawToken> out;
  std::size_t cp = 0;
  std::size_t i = 0;
  auto advance = [&](std::size_t bytes) {
    for (std::size_t k = 0; k < bytes; ++k) {
      if ((static_cast<unsigned char>(t[i + k]) & 0xC0) != 0x80) ++cp;
    }
    i += bytes;
  };
  auto emit = [&](std::size_t bytes) {
    RawToken tok;
    tok.text = std::string(t.substr(i, bytes));
    tok.lower = text::to_lower(tok.text);
    tok.start = cp;
    advance(bytes);
    tok.end = cp;
    out.push_back(std::move(tok));
  };
  while (i < t.size()) {
    if (is_space_char(t[i])) {
      advance(1);
      continue;
    }
    if (is_punct_char(t[i])) {
      emit(1);
      continue;
    }
    std::size_t j = i;
    while (j < t.size() && !is_space_char(t[j]) && !is_punct_char(t[j])) ++j;
    // Decimal numbers keep their separators ("3.5").
    while (j < t.size() && (t[j] == '.' || t[j] == ',') && j + 1 < t.size() &&
           std::isdigit(static_cast<unsigned char>(t[j + 1])) && j > i &&
           std::isdigit(static_cast<unsigned char>(t[j - 1]))) {
      ++j;
      while (j < t.size() && !is_space_char(t[j]) && !is_punct_char(t[j])) ++j;
    }
    std::string_view word = t.substr(i, j - i);
    if (word.size() > 2 && (ends_with(word, "'s") || ends_with(word, "’s"))) {
      const std::size_t clitic = ends_with(word, "'s") ? 2 : 4;
      emit(word.size() - clitic);
      emit(clitic);
      continue;
    }
    emit(word.size());
  }
  return out;
}

std::optional<Pos> lexicon_pos(std::string_view w) {
  if (kDeterminers.count(w)) return Pos::kDet;
  if (kNumerals.count(w) || all_digits(w)) return Pos::kNum;
  if (kPronouns.count(w)) return Pos::kPron;
  if (kPrepositions.count(w)) return Pos::kAdp;
  if (kConjunctions.count(w)) return Pos::kCconj;
  if (kSubordinators.count(w)) return Pos::kSconj;
  if (kAuxiliaries.count(w)) return Pos::kAux;
  if (kAdjectives.count(w)) return Pos::kAdj;
  if (kVerbs.count(w)) return Pos::kVerb;
  if (kAdverbs.count(w)) return Pos::kAdv;
  if (w == "not" || w == "n't" || w == "'s" || w == "’s") return Pos::kPart;
  return std::nullopt;
}

std::optional<Pos> suffix_pos(std::string_view w) {
  if (ends_with(w, "ly") && w.size() > 4) return Pos::kAdv;
  for (std::string_view s : {"ful", "ous", "ive", "able", "ible", "less",
                             "ish"}) {
    if (ends_with(w, s) && w.size() > s.size() + 2) return Pos::kAdj;
  }
  return std::nullopt;
}

bool is_nominal(Pos p) { return p == Pos::kNoun || p == Pos::kPropn; }

std::vector<Pos> tag(const std::vector<RawToken>& toks) {
  const std::size_t n = toks.size();
  std::vector<Pos> pos(n, Pos::kNoun);
  std::vector<bool> known(n, false);

  for (std::size_t i = 0; i < n; ++i) {
    const auto& tok = toks[i];
    if (tok.text.size() == 1 && is_punct_char(tok.text[0])) {
      pos[i] = Pos::kPunct;
      known[i] = true;
      continue;
    }
    if (auto p = lexicon_pos(tok.lower)) {
      pos[i] = *p;
      known[i] = true;
      continue;
    }
    if (i > 0 && is_capitalized(tok.text)) {
      pos[i] = Pos::kPropn;
      known[i] = true;
      continue;
    }
    if (auto p = suffix_pos(tok.lower)) {
      pos[i] = *p;
      known[i] = true;
    }
  }

  auto at = [&](std::size_t i) { return i < n ? pos[i] : Pos::kPunct; };

  // Context rules, applied left to right so earlier decisions feed later ones.
  bool clause_has_verb = false;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& w = toks[i].lower;
    const Pos prev = i > 0 ? pos[i - 1] : Pos::kPunct;
    const Pos next = at(i + 1);
    const std::string next_word = i + 1 < n ? toks[i + 1].lower : "";

    if (kCompoundPrepHeads.count(w) && next_word == "to") {
      pos[i] = Pos::kAdp;
    } else if (w == "to" && i + 1 < n && kVerbs.count(next_word) &&
               !ends_with(next_word, "s")) {
      pos[i] = Pos::kPart;
    } else if (w == "her" && !(next == Pos::kNoun || next == Pos::kAdj ||
                               next == Pos::kPropn)) {
      pos[i] = Pos::kPron;
    } else if (w == "one" && (next == Pos::kNoun || next == Pos::kAdj)) {
      pos[i] = Pos::kNum;
    } else if (!known[i] && ends_with(w, "ing") && w.size() > 4) {
      // Gerund modifiers inside a noun phrase ("a cutting board").
      const bool modifier =
          (prev == Pos::kDet || prev == Pos::kAdj || prev == Pos::kNum) &&
          i + 1 < n && toks[i + 1].lower.size() > 0 &&
          !lexicon_pos(toks[i + 1].lower).has_value();
      pos[i] = modifier ? Pos::kNoun : Pos::kVerb;
    } else if (!known[i] && ends_with(w, "ed") && w.size() > 4) {
      const bool attributive =
          (prev == Pos::kDet || prev == Pos::kAdj) && i + 1 < n &&
          !lexicon_pos(next_word).has_value();
      pos[i] = attributive ? Pos::kAdj : Pos::kVerb;
    } else if (!known[i] && !clause_has_verb && is_nominal(prev) &&
               (next == Pos::kDet || next == Pos::kNum ||
                (next == Pos::kPron && next_word != "it")) &&
               i > 0 && pos[i - 1] != Pos::kPropn) {
      // Bare finite verb between a subject noun and its object.
      pos[i] = Pos::kVerb;
    }

    if (pos[i] == Pos::kVerb || pos[i] == Pos::kAux) clause_has_verb = true;
    if (pos[i] == Pos::kPunct || pos[i] == Pos::kSconj) clause_has_verb = false;
  }
  return pos;
}

// Noun chunks: [DET] (NUM | ADJ | ADJ CCONJ ADJ | NOUN 's)* (NOUN | PROPN)+,
// plus bare pronouns.
std::vector<TokenRange> chunk(const std::vector<RawToken>& toks,
                              const std::vector<Pos>& pos) {
  std::vector<TokenRange> chunks;
  const std::size_t n = toks.size();
  std::size_t i = 0;
  while (i < n) {
    if (pos[i] == Pos::kPron) {
      chunks.push_back({i, i + 1, "NP"});
      ++i;
      continue;
    }
    const bool can_start = pos[i] == Pos::kDet || pos[i] == Pos::kNum ||
                           pos[i] == Pos::kAdj || is_nominal(pos[i]);
    if (!can_start) {
      ++i;
      continue;
    }
    std::size_t j = i;
    if (pos[j] == Pos::kDet) ++j;
    std::optional<std::size_t> last_noun;
    while (j < n) {
      const Pos p = pos[j];
      if (p == Pos::kNum || p == Pos::kAdj) {
        ++j;
      } else if (is_nominal(p)) {
        last_noun = j;
        ++j;
      } else if (p == Pos::kCconj && j > i && pos[j - 1] == Pos::kAdj &&
                 j + 1 < n && pos[j + 1] == Pos::kAdj) {
        ++j;
      } else if (p == Pos::kAdv && toks[j].lower == "very" && j + 1 < n &&
                 pos[j + 1] == Pos::kAdj) {
        ++j;
      } else if (p == Pos::kPart && (toks[j].lower == "'s" ||
                                     toks[j].lower == "’s") &&
                 j > i && is_nominal(pos[j - 1]) && j + 1 < n &&
                 (is_nominal(pos[j + 1]) || pos[j + 1] == Pos::kAdj)) {
        ++j;
      } else {
        break;
      }
    }
    if (last_noun) {
      chunks.push_back({i, *last_noun + 1, "NP"});
      i = *last_noun + 1;
    } else {
      i = std::max(j, i + 1);
    }
  }
  return chunks;
}

std::vector<TokenRange> entities(const std::vector<RawToken>& toks,
                                 const std::vector<Pos>& pos) {
  std::vector<TokenRange> out;
  const std::size_t n = toks.size();
  for (std::size_t i = 0; i < n;) {
    if (pos[i] == Pos::kPropn) {
      std::size_t j = i;
      while (j < n && pos[j] == Pos::kPropn) ++j;
      out.push_back({i, j, "PROPN"});
      i = j;
    } else if (pos[i] == Pos::kNum) {
      out.push_back({i, i + 1, "CARDINAL"});
      ++i;
    } else {
      ++i;
    }
  }
  return out;
}

// Heuristic projective dependency tree over the tagged, chunked tokens.
void attach(std::vector<Token>& tokens, const std::vector<TokenRange>& chunks) {
  const std::size_t n = tokens.size();
  std::vector<int> chunk_of(n, -1);
  for (std::size_t c = 0; c < chunks.size(); ++c) {
    for (std::size_t k = chunks[c].begin; k < chunks[c].end; ++k) {
      chunk_of[k] = static_cast<int>(c);
    }
  }
  auto chunk_head = [&](std::size_t c) {
    return static_cast<int>(chunks[c].end - 1);
  };

  int root = -1;
  for (std::size_t i = 0; i < n && root < 0; ++i) {
    if (tokens[i].pos == Pos::kVerb) root = static_cast<int>(i);
  }
  for (std::size_t i = 0; i < n && root < 0; ++i) {
    if (tokens[i].pos == Pos::kAux) root = static_cast<int>(i);
  }
  if (root < 0 && !chunks.empty()) root = chunk_head(0);
  if (root < 0) root = 0;

  auto set = [&](std::size_t i, int head, const char* dep) {
    if (static_cast<int>(i) == root) return;
    tokens[i].head = head;
    tokens[i].dep = dep;
  };

  tokens[root].head = -1;
  tokens[root].dep = "ROOT";

  // Chunk-internal modifiers attach to the chunk head.
  for (std::size_t c = 0; c < chunks.size(); ++c) {
    const int h = chunk_head(c);
    for (std::size_t k = chunks[c].begin; k + 1 < chunks[c].end; ++k) {
      const char* dep = "compound";
      switch (tokens[k].pos) {
        case Pos::kDet: dep = "det"; break;
        case Pos::kNum: dep = "nummod"; break;
        case Pos::kAdj: dep = "amod"; break;
        case Pos::kCconj: dep = "cc"; break;
        case Pos::kAdv: dep = "advmod"; break;
        case Pos::kPart: dep = "case"; break;
        default: break;
      }
      set(k, h, dep);
    }
  }

  int last_pred = -1;        // nearest verb / root seen so far
  int last_chunk = -1;       // index of the previous chunk
  int pending_prep = -1;     // preposition awaiting its object
  int pending_aux = -1;
  bool pending_conj = false;
  bool subject_done = false;

  for (std::size_t i = 0; i < n; ++i) {
    Token& tok = tokens[i];
    const int ci = chunk_of[i];
    if (ci >= 0 && static_cast<int>(i) != chunk_head(ci)) continue;

    if (ci >= 0) {
      if (pending_prep >= 0) {
        set(i, pending_prep, "pobj");
        pending_prep = -1;
      } else if (pending_conj && last_chunk >= 0) {
        set(i, chunk_head(last_chunk), "conj");
      } else if (!subject_done && last_pred < 0 && root != static_cast<int>(i)) {
        set(i, root, "nsubj");
        subject_done = true;
      } else {
        set(i, last_pred >= 0 ? last_pred : root, "dobj");
      }
      pending_conj = false;
      last_chunk = ci;
      continue;
    }

    switch (tok.pos) {
      case Pos::kVerb: {
        if (pending_aux >= 0) {
          set(pending_aux, static_cast<int>(i), "aux");
          pending_aux = -1;
        }
        if (static_cast<int>(i) != root) {
          set(i, root, last_chunk >= 0 && pending_prep < 0 ? "acl" : "conj");
        }
        last_pred = static_cast<int>(i);
        subject_done = true;
        pending_conj = false;
        pending_prep = -1;
        break;
      }
      case Pos::kAux:
        if (static_cast<int>(i) == root) {
          last_pred = root;
        } else {
          set(i, root, "aux");
          pending_aux = static_cast<int>(i);
        }
        subject_done = true;
        break;
      case Pos::kAdp: {
        const bool fixed = i > 0 && tokens[i - 1].pos == Pos::kAdp &&
                           kCompoundPrepHeads.count(
                               text::to_lower(tokens[i - 1].text)) > 0;
        if (fixed) {
          set(i, static_cast<int>(i) - 1, "fixed");
          break;
        }
        int head = root;
        if (i > 0 && chunk_of[i - 1] >= 0) {
          head = chunk_head(chunk_of[i - 1]);
        } else if (last_pred >= 0) {
          head = last_pred;
        } else if (last_chunk >= 0) {
          head = chunk_head(last_chunk);
        }
        if (head == static_cast<int>(i)) head = root;
        set(i, head, "prep");
        pending_prep = static_cast<int>(i);
        break;
      }
      case Pos::kCconj:
        set(i, last_chunk >= 0 ? chunk_head(last_chunk) : root, "cc");
        pending_conj = true;
        break;
      case Pos::kAdj:
        set(i, last_pred >= 0 ? last_pred : root, "acomp");
        break;
      case Pos::kPunct:
        set(i, root, "punct");
        break;
      default:
        set(i, last_pred >= 0 ? last_pred : root,
            tok.pos == Pos::kAdv ? "advmod" : "dep");
        break;
    }
  }

  // Adjective coordinations outside chunks ("black and white") stay flat;
  // any head still unset hangs off the root.
  for (std::size_t i = 0; i < n; ++i) {
    if (static_cast<int>(i) != root && tokens[i].dep.empty()) {
      tokens[i].head = root;
      tokens[i].dep = "dep";
    }
  }
}

}  // namespace

Annotation rule_annotate(std::string_view t) {
  const auto raw = tokenize(t);
  const auto pos = tag(raw);
  Annotation a;
  a.tokens.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    a.tokens.push_back(Token{raw[i].text, raw[i].start, raw[i].end, pos[i],
                             -1, ""});
  }
  a.noun_chunks = chunk(raw, pos);
  a.entities = entities(raw, pos);
  if (!a.tokens.empty()) attach(a.tokens, a.noun_chunks);
  return a;
}

}  // namespace alignvq
