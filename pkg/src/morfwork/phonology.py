"""Two-level phonology engine.

Relates lexical strings (root plus suffix material, with meta-phonemes such
as H and A and the morpheme boundary '+') to surface strings through a set
of declarative symbol-pair rules.  All rules constrain an alignment of
feasible lexical:surface pairs in parallel: an alignment is admitted only if
every rule admits it.  Surface strings are read off admitted alignments by
dropping the null symbol '0'.

Rules are loaded from a small text DSL (see `parse_rule_file`) and compiled
to finite automata over the feasible-pair alphabet; generation and
recognition walk the lexical string left to right, advancing every rule
automaton in lockstep and pruning dead branches.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

NULL = "0"
BOUNDARY = "+"
ANY = "@"

_OPERATORS = ("=>", "<=", "<=>", "/<=")


class RuleFileError(ValueError):
    """Raised for malformed rule files; carries the offending position."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"line {line}" + (f", col {col}" if col is not None else "") + f": {message}"
        super().__init__(message)


@dataclass(frozen=True)
class SymbolPair:
    """One lexical:surface correspondence, e.g. H:i or +:0."""

    lexical: str
    surface: str

    def __str__(self) -> str:
        return f"{self.lexical}:{self.surface}"


@dataclass(frozen=True)
class LexicalString:
    """A lexical form: symbol sequence plus morpheme spans.

    Spans partition the symbols; the first span is the root, later spans are
    suffix morphemes, and adjacent spans are separated by exactly one '+'.
    A zero morpheme contributes an empty span after its boundary.
    """

    symbols: tuple[str, ...]
    spans: tuple[tuple[int, int, str], ...]

    def gloss(self) -> str:
        """Render root+suffix lexical material, omitting trailing boundaries."""
        return "".join(self.symbols).rstrip(BOUNDARY)

    def __str__(self) -> str:
        return "".join(self.symbols)


@dataclass(frozen=True)
class Alphabet:
    """Surface symbols, named classes, meta-phonemes and feasible pairs."""

    symbols: frozenset[str]
    classes: dict[str, frozenset[str]]
    metas: dict[str, frozenset[str]]
    pairs: tuple[SymbolPair, ...]

    def lexical_symbols(self) -> frozenset[str]:
        return self.symbols | frozenset(self.metas) | {BOUNDARY}

    def pairs_for(self, lexical: str) -> tuple[SymbolPair, ...]:
        return tuple(p for p in self.pairs if p.lexical == lexical)


@dataclass(frozen=True)
class RuleBranch:
    """One concrete pair plus left/right context patterns (post variable expansion)."""

    pair: SymbolPair
    left: tuple
    right: tuple


@dataclass(frozen=True)
class TwoLevelRule:
    name: str
    operator: str  # one of =>, <=, <=>, /<=
    branches: tuple[RuleBranch, ...]

    @property
    def pair(self) -> SymbolPair:
        return self.branches[0].pair


@dataclass(frozen=True)
class RuleConflict:
    """Two rules that can coerce different surfaces for one lexical symbol."""

    rule_a: str
    rule_b: str
    lexical: str
    surfaces: tuple[str, str]

    def message(self) -> str:
        return (
            f"rules {self.rule_a} and {self.rule_b} coerce lexical "
            f"'{self.lexical}' to both '{self.surfaces[0]}' and "
            f"'{self.surfaces[1]}' in overlapping contexts"
        )


# ---------------------------------------------------------------------------
# DSL tokenizer


@dataclass(frozen=True)
class _Token:
    text: str
    line: int
    col: int


_SPECIALS = "()|*;"


def _tokenize_rules(lines: list[tuple[int, str]]) -> list[_Token]:
    tokens: list[_Token] = []
    for lineno, line in lines:
        i = 0
        n = len(line)
        while i < n:
            ch = line[i]
            if ch == "#":
                break
            if ch.isspace():
                i += 1
                continue
            if ch in _SPECIALS:
                tokens.append(_Token(ch, lineno, i + 1))
                i += 1
                continue
            j = i
            while j < n and not line[j].isspace() and line[j] not in _SPECIALS and line[j] != "#":
                j += 1
            tokens.append(_Token(line[i:j], lineno, i + 1))
            i = j
    return tokens


# ---------------------------------------------------------------------------
# Context patterns: AST -> NFA -> DFA over the feasible-pair alphabet
#
# AST nodes are tuples: ('eps',), ('atom', lexspec, surfspec),
# ('seq', (nodes,)), ('alt', (nodes,)), ('star', node).
# A side spec is ('any',), ('sym', s) or ('class', name).


def _side_matches(spec: tuple, symbol: str, classes: dict[str, frozenset[str]]) -> bool:
    kind = spec[0]
    if kind == "any":
        return True
    if kind == "sym":
        return symbol == spec[1]
    return symbol in classes[spec[1]]


def _atom_matches(atom: tuple, pair: SymbolPair, classes: dict[str, frozenset[str]]) -> bool:
    return _side_matches(atom[1], pair.lexical, classes) and _side_matches(
        atom[2], pair.surface, classes
    )


class _Nfa:
    def __init__(self):
        self.eps: list[set[int]] = []
        self.edges: list[list[tuple[tuple, int]]] = []  # state -> [(atom|None, target)]

    def new_state(self) -> int:
        self.eps.append(set())
        self.edges.append([])
        return len(self.eps) - 1

    def add(self, node: tuple) -> tuple[int, int]:
        kind = node[0]
        if kind == "eps":
            s = self.new_state()
            return s, s
        if kind == "atom":
            s, t = self.new_state(), self.new_state()
            self.edges[s].append((node, t))
            return s, t
        if kind == "seq":
            s = self.new_state()
            cur = s
            for child in node[1]:
                cs, ct = self.add(child)
                self.eps[cur].add(cs)
                cur = ct
            return s, cur
        if kind == "alt":
            s, t = self.new_state(), self.new_state()
            for child in node[1]:
                cs, ct = self.add(child)
                self.eps[s].add(cs)
                self.eps[ct].add(t)
            return s, t
        if kind == "star":
            s = self.new_state()
            cs, ct = self.add(node[1])
            self.eps[s].add(cs)
            self.eps[ct].add(s)
            return s, s
        raise AssertionError(f"unknown pattern node {kind}")

    def closure(self, states: frozenset[int]) -> frozenset[int]:
        todo = list(states)
        seen = set(states)
        while todo:
            s = todo.pop()
            for t in self.eps[s]:
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
        return frozenset(seen)


@dataclass
class _Dfa:
    start: int
    trans: list[list[int]]  # [state][pair_id] -> state or -1
    accepting: list[bool]


def _compile_context(
    node: tuple,
    alphabet: Alphabet,
    *,
    any_prefix: bool,
    sticky: bool,
) -> _Dfa:
    """Compile a context pattern to a DFA over pair ids.

    With any_prefix the DFA tracks 'pattern matches a suffix of the input so
    far' (used for left contexts); with sticky it tracks 'pattern matched a
    prefix of the input' and stays accepting (used for right contexts).
    """
    nfa = _Nfa()
    start, end = nfa.add(node)
    if any_prefix:
        s0 = nfa.new_state()
        nfa.edges[s0].append((("atom", ("any",), ("any",)), s0))
        nfa.eps[s0].add(start)
        start = s0

    n_pairs = len(alphabet.pairs)
    init = nfa.closure(frozenset({start}))
    subsets = {init: 0}
    order = [init]
    trans: list[list[int]] = []
    accepting: list[bool] = []
    ACCEPT = -2  # temporary marker for sticky accept

    def is_acc(subset: frozenset[int]) -> bool:
        return end in subset

    queue = [init]
    while queue:
        subset = queue.pop(0)
        sid = subsets[subset]
        while len(trans) <= sid:
            trans.append([-1] * n_pairs)
            accepting.append(False)
        accepting[sid] = is_acc(subset)
        if sticky and accepting[sid]:
            # absorbing accept: all transitions loop back
            trans[sid] = [ACCEPT] * n_pairs
            continue
        for pid, pair in enumerate(alphabet.pairs):
            moved = set()
            for s in subset:
                for atom, t in nfa.edges[s]:
                    if _atom_matches(atom, pair, alphabet.classes):
                        moved.add(t)
            if not moved:
                continue
            nxt = nfa.closure(frozenset(moved))
            if nxt not in subsets:
                subsets[nxt] = len(subsets)
                order.append(nxt)
                queue.append(nxt)
            trans[sid][pid] = subsets[nxt]
    # resolve sticky accept markers to self-loops
    for sid, row in enumerate(trans):
        for pid, t in enumerate(row):
            if t == ACCEPT:
                row[pid] = sid
    return _Dfa(start=0, trans=trans, accepting=accepting)


# ---------------------------------------------------------------------------
# Rule file parsing


def _parse_alphabet_line(
    lineno: int, line: str, symbols: set, classes: dict, metas: dict, pair_specs: list
) -> None:
    parts = line.split()
    keyword = parts[0]
    if keyword == "SYMBOLS":
        for s in parts[1:]:
            if len(s) != 1:
                raise RuleFileError(f"surface symbols are single characters, got {s!r}", lineno)
            if s in (NULL, BOUNDARY, ANY):
                raise RuleFileError(f"{s!r} is reserved and cannot be a surface symbol", lineno)
            symbols.add(s)
    elif keyword in ("CLASS", "META"):
        if len(parts) < 4 or parts[2] != "=":
            raise RuleFileError(f"expected '{keyword} Name = members...'", lineno)
        name = parts[1]
        members = parts[3:]
        if name in classes or name in metas:
            raise RuleFileError(f"duplicate class or meta-phoneme name {name!r}", lineno)
        for m in members:
            if m not in symbols:
                raise RuleFileError(f"undeclared symbol {m!r} in {name}", lineno)
        target = classes if keyword == "CLASS" else metas
        target[name] = frozenset(members)
    elif keyword == "PAIRS":
        for spec in parts[1:]:
            pair_specs.append((lineno, spec))
    else:
        raise RuleFileError(f"unknown alphabet declaration {keyword!r}", lineno)


def _finish_alphabet(symbols, classes, metas, pair_specs) -> Alphabet:
    pairs: list[SymbolPair] = []
    seen = set()

    def add_pair(lineno, lex, surf):
        if (lex, surf) in seen:
            return
        if lex == NULL:
            raise RuleFileError("insertion pairs (lexical '0') are not supported", lineno)
        if lex == BOUNDARY and surf != NULL:
            raise RuleFileError("the boundary '+' must pair with surface '0'", lineno)
        if lex != BOUNDARY and lex not in symbols and lex not in metas:
            raise RuleFileError(f"undeclared lexical symbol {lex!r} in pair", lineno)
        if surf != NULL and surf not in symbols:
            raise RuleFileError(f"undeclared surface symbol {surf!r} in pair", lineno)
        seen.add((lex, surf))
        pairs.append(SymbolPair(lex, surf))

    for lineno, spec in pair_specs:
        if spec == "identity":
            for s in sorted(symbols):
                add_pair(lineno, s, s)
            continue
        sides = spec.split(":")
        if len(sides) != 2 or not sides[0] or not sides[1]:
            raise RuleFileError(f"malformed pair {spec!r}", lineno)
        add_pair(lineno, sides[0], sides[1])
    if not pairs:
        raise RuleFileError("alphabet declares no feasible pairs")
    return Alphabet(
        symbols=frozenset(symbols),
        classes=dict(classes),
        metas=dict(metas),
        pairs=tuple(pairs),
    )


def _parse_side(tok: _Token, side: str, alphabet: Alphabet, variables: dict) -> tuple:
    if side == ANY:
        return ("any",)
    if side in variables:
        return ("var", side)
    if side in alphabet.classes:
        return ("class", side)
    if side == NULL or side == BOUNDARY or side in alphabet.symbols or side in alphabet.metas:
        return ("sym", side)
    raise RuleFileError(f"undeclared symbol or class {side!r}", tok.line, tok.col)


def _parse_atom(tok: _Token, alphabet: Alphabet, variables: dict) -> tuple:
    if ":" in tok.text:
        sides = tok.text.split(":")
        if len(sides) != 2 or not sides[0] or not sides[1]:
            raise RuleFileError(f"malformed pair atom {tok.text!r}", tok.line, tok.col)
        lex, surf = sides
    else:
        lex = surf = tok.text
    return ("atom", _parse_side(tok, lex, alphabet, variables), _parse_side(tok, surf, alphabet, variables))


def _parse_pattern(tokens: list[_Token], alphabet: Alphabet, variables: dict) -> tuple:
    pos = 0

    def parse_alt() -> tuple:
        nonlocal pos
        branches = [parse_seq()]
        while pos < len(tokens) and tokens[pos].text == "|":
            pos += 1
            branches.append(parse_seq())
        if len(branches) == 1:
            return branches[0]
        return ("alt", tuple(branches))

    def parse_seq() -> tuple:
        nonlocal pos
        items = []
        while pos < len(tokens) and tokens[pos].text not in ("|", ")"):
            items.append(parse_term())
        if not items:
            return ("eps",)
        if len(items) == 1:
            return items[0]
        return ("seq", tuple(items))

    def parse_term() -> tuple:
        nonlocal pos
        tok = tokens[pos]
        if tok.text == "(":
            pos += 1
            inner = parse_alt()
            if pos >= len(tokens) or tokens[pos].text != ")":
                raise RuleFileError("unclosed '(' in context", tok.line, tok.col)
            pos += 1
            node = inner
        elif tok.text == "*":
            raise RuleFileError("'*' must follow an atom or group", tok.line, tok.col)
        else:
            node = _parse_atom(tok, alphabet, variables)
            pos += 1
        while pos < len(tokens) and tokens[pos].text == "*":
            node = ("star", node)
            pos += 1
        return node

    node = parse_alt()
    if pos != len(tokens):
        t = tokens[pos]
        raise RuleFileError(f"unexpected {t.text!r} in context", t.line, t.col)
    return node


def _substitute(node: tuple, binding: dict[str, tuple]) -> tuple:
    kind = node[0]
    if kind == "atom":
        sides = []
        for spec in (node[1], node[2]):
            if spec[0] == "var":
                sides.append(binding[spec[1]])
            else:
                sides.append(spec)
        return ("atom", sides[0], sides[1])
    if kind in ("seq", "alt"):
        return (kind, tuple(_substitute(c, binding) for c in node[1]))
    if kind == "star":
        return ("star", _substitute(node[1], binding))
    return node


def _parse_statement(tokens: list[_Token], alphabet: Alphabet) -> TwoLevelRule:
    pos = 0
    first = tokens[0]
    name = None
    if first.text.endswith(":") and len(first.text) > 1:
        name = first.text[:-1]
        pos = 1
        if pos >= len(tokens):
            raise RuleFileError("rule header without a pair", first.line, first.col)

    pair_tok = tokens[pos]
    pos += 1
    if pos >= len(tokens) or tokens[pos].text not in _OPERATORS:
        where = tokens[pos] if pos < len(tokens) else pair_tok
        raise RuleFileError("expected rule operator (=>, <=, <=> or /<=)", where.line, where.col)
    operator = tokens[pos].text
    pos += 1

    # split remaining tokens into left / right / where sections
    left_toks: list[_Token] = []
    right_toks: list[_Token] = []
    where_toks: list[_Token] = []
    section = left_toks
    for tok in tokens[pos:]:
        if tok.text == "_" and section is left_toks:
            section = right_toks
            continue
        if tok.text == "WHERE" and section is right_toks:
            section = where_toks
            continue
        section.append(tok)
    if section is left_toks:
        raise RuleFileError("rule context is missing '_'", pair_tok.line, pair_tok.col)

    variables: dict[str, list[str]] = {}
    if where_toks:
        i = 0
        while i < len(where_toks):
            tok = where_toks[i]
            if tok.text == "MATCHED":
                i += 1
                continue
            var = tok.text
            if i + 1 >= len(where_toks) or where_toks[i + 1].text != "IN":
                raise RuleFileError(f"expected 'IN' after variable {var!r}", tok.line, tok.col)
            if i + 2 >= len(where_toks) or where_toks[i + 2].text != "(":
                raise RuleFileError("expected '(' after IN", tok.line, tok.col)
            i += 3
            items = []
            while i < len(where_toks) and where_toks[i].text != ")":
                items.append(where_toks[i].text)
                i += 1
            if i >= len(where_toks):
                raise RuleFileError("unclosed variable list", tok.line, tok.col)
            i += 1
            if not items:
                raise RuleFileError(f"empty variable list for {var!r}", tok.line, tok.col)
            if var in variables:
                raise RuleFileError(f"duplicate variable {var!r}", tok.line, tok.col)
            variables[var] = items
        lengths = {len(v) for v in variables.values()}
        if len(lengths) > 1:
            raise RuleFileError(
                "matched variable lists must have equal lengths", first.line, first.col
            )

    # parse the pair, allowing variables on either side
    sides = pair_tok.text.split(":")
    if len(sides) != 2 or not sides[0] or not sides[1]:
        raise RuleFileError(f"malformed rule pair {pair_tok.text!r}", pair_tok.line, pair_tok.col)
    lex_spec = _parse_side(pair_tok, sides[0], alphabet, variables)
    surf_spec = _parse_side(pair_tok, sides[1], alphabet, variables)
    for spec in (lex_spec, surf_spec):
        if spec[0] == "class":
            raise RuleFileError(
                "rule pairs must use concrete symbols or WHERE variables",
                pair_tok.line,
                pair_tok.col,
            )

    left_ast = _parse_pattern(left_toks, alphabet, variables)
    right_ast = _parse_pattern(right_toks, alphabet, variables)

    n_branches = len(next(iter(variables.values()))) if variables else 1
    feasible = {(p.lexical, p.surface) for p in alphabet.pairs}
    branches = []
    for k in range(n_branches):
        binding: dict[str, tuple] = {}
        for var, items in variables.items():
            item = items[k]
            if item in alphabet.classes:
                binding[var] = ("class", item)
            elif item in alphabet.symbols or item in alphabet.metas or item in (NULL, BOUNDARY):
                binding[var] = ("sym", item)
            else:
                raise RuleFileError(
                    f"undeclared symbol or class {item!r} in variable {var!r}",
                    first.line,
                    first.col,
                )
        lex = binding[lex_spec[1]][1] if lex_spec[0] == "var" else lex_spec[1]
        surf = binding[surf_spec[1]][1] if surf_spec[0] == "var" else surf_spec[1]
        pair = SymbolPair(lex, surf)
        if (lex, surf) not in feasible:
            raise RuleFileError(
                f"rule pair {pair} is not in the feasible-pair alphabet",
                pair_tok.line,
                pair_tok.col,
            )
        branches.append(
            RuleBranch(
                pair=pair,
                left=_substitute(left_ast, binding),
                right=_substitute(right_ast, binding),
            )
        )

    if name is None:
        name = pair_tok.text
    return TwoLevelRule(name=name, operator=operator, branches=tuple(branches))


def parse_rule_file(text: str) -> tuple[Alphabet, list[TwoLevelRule]]:
    """Parse a rule DSL document into an alphabet and its rules.

    Raises RuleFileError on syntax problems, undeclared symbols or classes,
    duplicate rule names, or a missing ALPHABET block.
    """
    raw_lines = text.splitlines()
    lines: list[tuple[int, str]] = []
    for i, line in enumerate(raw_lines, start=1):
        stripped = line.split("#", 1)[0].rstrip()
        if stripped.strip():
            lines.append((i, stripped))

    if not lines:
        raise RuleFileError("no alphabet declared")
    idx = 0
    if lines[idx][1].strip() != "ALPHABET":
        raise RuleFileError("no alphabet declared", lines[idx][0])
    idx += 1

    symbols: set[str] = set()
    classes: dict[str, frozenset[str]] = {}
    metas: dict[str, frozenset[str]] = {}
    pair_specs: list[tuple[int, str]] = []
    while idx < len(lines) and lines[idx][1].strip() != "END":
        lineno, line = lines[idx]
        _parse_alphabet_line(lineno, line.strip(), symbols, classes, metas, pair_specs)
        idx += 1
    if idx >= len(lines):
        raise RuleFileError("ALPHABET block is missing END")
    idx += 1

    alphabet = _finish_alphabet(symbols, classes, metas, pair_specs)

    tokens = _tokenize_rules(lines[idx:])
    rules: list[TwoLevelRule] = []
    names: set[str] = set()
    statement: list[_Token] = []
    for tok in tokens:
        if tok.text == ";":
            if not statement:
                raise RuleFileError("empty statement", tok.line, tok.col)
            rule = _parse_statement(statement, alphabet)
            if rule.name in names:
                raise RuleFileError(f"duplicate rule name {rule.name!r}", statement[0].line)
            names.add(rule.name)
            rules.append(rule)
            statement = []
        else:
            statement.append(tok)
    if statement:
        t = statement[0]
        raise RuleFileError("statement is missing ';'", t.line, t.col)
    return alphabet, rules


# ---------------------------------------------------------------------------
# Compiled engine


class _CompiledBranch:
    __slots__ = ("pair", "pair_id", "l_trans", "l_acc", "r_trans", "r_acc", "r_start_acc")

    def __init__(self, pair: SymbolPair, pair_id: int, ldfa: _Dfa, rdfa: _Dfa):
        self.pair = pair
        self.pair_id = pair_id
        self.l_trans = ldfa.trans
        self.l_acc = ldfa.accepting
        self.r_trans = rdfa.trans
        self.r_acc = rdfa.accepting
        self.r_start_acc = rdfa.accepting[rdfa.start]


class _CompiledRule:
    __slots__ = ("name", "restrict", "coerce", "exclude", "branches",
                 "restr_index", "coerce_index", "excl_index")

    def __init__(self, rule: TwoLevelRule, alphabet: Alphabet, pair_ids: dict):
        self.name = rule.name
        self.restrict = rule.operator in ("=>", "<=>")
        self.coerce = rule.operator in ("<=", "<=>")
        self.exclude = rule.operator == "/<="
        self.branches = []
        self.restr_index: dict[int, list[int]] = {}
        self.coerce_index: dict[str, list[tuple[int, str]]] = {}
        self.excl_index: dict[int, list[int]] = {}
        for b, branch in enumerate(rule.branches):
            pid = pair_ids[(branch.pair.lexical, branch.pair.surface)]
            ldfa = _compile_context(branch.left, alphabet, any_prefix=True, sticky=False)
            rdfa = _compile_context(branch.right, alphabet, any_prefix=False, sticky=True)
            self.branches.append(_CompiledBranch(branch.pair, pid, ldfa, rdfa))
            if self.restrict:
                self.restr_index.setdefault(pid, []).append(b)
            if self.coerce:
                self.coerce_index.setdefault(branch.pair.lexical, []).append(
                    (b, branch.pair.surface)
                )
            if self.exclude:
                self.excl_index.setdefault(pid, []).append(b)

    def initial(self) -> tuple:
        return (tuple(0 for _ in self.branches), frozenset(), frozenset())


class PhonologyEngine:
    """Compiled rule set offering generation, recognition and conflict checks.

    Immutable after construction; all methods are pure and safe to call from
    any number of threads.
    """

    def __init__(self, alphabet: Alphabet, rules: Sequence[TwoLevelRule]):
        self.alphabet = alphabet
        self.rules = tuple(rules)
        self._pair_ids = {(p.lexical, p.surface): i for i, p in enumerate(alphabet.pairs)}
        self._pairs = alphabet.pairs
        self._compiled = [_CompiledRule(r, alphabet, self._pair_ids) for r in rules]
        self._by_lexical: dict[str, tuple[int, ...]] = {}
        for i, p in enumerate(alphabet.pairs):
            self._by_lexical.setdefault(p.lexical, ())
            self._by_lexical[p.lexical] += (i,)

    # -- scanning core ------------------------------------------------------

    def start_state(self) -> tuple:
        return tuple(cr.initial() for cr in self._compiled)

    def feed(self, state: tuple, pid: int) -> tuple | None:
        """Advance every rule over one pair; None means no admissible continuation."""
        pair = self._pairs[pid]
        out = []
        for cr, rstate in zip(self._compiled, state):
            lstates, pos_obls, neg_obls = rstate
            new_pos = []
            new_neg = []
            if cr.restrict:
                bs = cr.restr_index.get(pid)
                if bs is not None:
                    members = [b for b in bs if cr.branches[b].l_acc[lstates[b]]]
                    if not members:
                        return None
                    if not any(cr.branches[b].r_start_acc for b in members):
                        new_pos.append(frozenset((b, 0) for b in members))
            if cr.coerce:
                ts = cr.coerce_index.get(pair.lexical)
                if ts:
                    for b, surf in ts:
                        if surf != pair.surface and cr.branches[b].l_acc[lstates[b]]:
                            if cr.branches[b].r_start_acc:
                                return None
                            new_neg.append((b, 0))
            if cr.exclude:
                bs = cr.excl_index.get(pid)
                if bs is not None:
                    for b in bs:
                        if cr.branches[b].l_acc[lstates[b]]:
                            if cr.branches[b].r_start_acc:
                                return None
                            new_neg.append((b, 0))

            adv_pos = []
            for ob in pos_obls:
                discharged = False
                members = []
                for b, rs in ob:
                    nrs = cr.branches[b].r_trans[rs][pid]
                    if nrs < 0:
                        continue
                    if cr.branches[b].r_acc[nrs]:
                        discharged = True
                        break
                    members.append((b, nrs))
                if discharged:
                    continue
                if not members:
                    return None
                adv_pos.append(frozenset(members))
            adv_neg = []
            for b, rs in neg_obls:
                nrs = cr.branches[b].r_trans[rs][pid]
                if nrs < 0:
                    continue
                if cr.branches[b].r_acc[nrs]:
                    return None
                adv_neg.append((b, nrs))

            nl = tuple(
                cr.branches[b].l_trans[lstates[b]][pid] for b in range(len(cr.branches))
            )
            out.append((nl, frozenset(adv_pos) | frozenset(new_pos),
                        frozenset(adv_neg) | frozenset(new_neg)))
        return tuple(out)

    def accepts(self, state: tuple) -> bool:
        """A final scan state is admissible iff no licensing obligation is open."""
        return all(not pos_obls for (_, pos_obls, _) in state)

    # -- generation ---------------------------------------------------------

    def _check_lexical(self, symbols: Sequence[str]) -> None:
        known = self.alphabet.lexical_symbols()
        for s in symbols:
            if s not in known:
                raise ValueError(f"undeclared lexical symbol {s!r}")

    def generate(self, lexical: LexicalString | Sequence[str]) -> set[str]:
        """All surface strings admitted for the lexical form (nulls removed)."""
        symbols = lexical.symbols if isinstance(lexical, LexicalString) else tuple(lexical)
        self._check_lexical(symbols)
        results: set[str] = set()
        for state, out in self._walk(symbols, self.start_state(), ()):
            if self.accepts(state):
                results.add("".join(out))
        return results

    def alignments(self, lexical: LexicalString | Sequence[str]) -> list[tuple[SymbolPair, ...]]:
        """Admitted pair alignments, for inspection and property checks."""
        symbols = lexical.symbols if isinstance(lexical, LexicalString) else tuple(lexical)
        self._check_lexical(symbols)
        found = []
        stack = [(0, self.start_state(), ())]
        while stack:
            i, state, pairs = stack.pop()
            if i == len(symbols):
                if self.accepts(state):
                    found.append(pairs)
                continue
            for pid in self._by_lexical.get(symbols[i], ()):
                nstate = self.feed(state, pid)
                if nstate is not None:
                    stack.append((i + 1, nstate, pairs + (self._pairs[pid],)))
        return found

    def _walk(self, symbols, state, out, i=0):
        if i == len(symbols):
            yield state, out
            return
        for pid in self._by_lexical.get(symbols[i], ()):
            nstate = self.feed(state, pid)
            if nstate is not None:
                pair = self._pairs[pid]
                nout = out if pair.surface == NULL else out + (pair.surface,)
                yield from self._walk(symbols, nstate, nout, i + 1)

    # -- recognition --------------------------------------------------------

    def recognition_start(self) -> frozenset:
        """Initial recognition states: (scan state, surface position) pairs."""
        return frozenset({(self.start_state(), 0)})

    def recognition_extend(
        self, states: Iterable[tuple], symbols: Sequence[str], surface: str
    ) -> frozenset:
        """Advance recognition states over additional lexical symbols."""
        current = set(states)
        for sym in symbols:
            nxt = set()
            for state, spos in current:
                for pid in self._by_lexical.get(sym, ()):
                    pair = self._pairs[pid]
                    if pair.surface == NULL:
                        npos = spos
                    elif spos < len(surface) and surface[spos] == pair.surface:
                        npos = spos + 1
                    else:
                        continue
                    nstate = self.feed(state, pid)
                    if nstate is not None:
                        nxt.add((nstate, npos))
            current = nxt
            if not current:
                break
        return frozenset(current)

    def recognition_accepts(self, states: Iterable[tuple], surface: str) -> bool:
        return any(
            spos == len(surface) and self.accepts(state) for state, spos in states
        )

    def recognize(self, surface: str, lexical: LexicalString | Sequence[str]) -> bool:
        """True iff the surface string aligns with the lexical form under every rule.

        Implemented directionally over the alignment search, without
        enumerating the full generation set.
        """
        symbols = lexical.symbols if isinstance(lexical, LexicalString) else tuple(lexical)
        self._check_lexical(symbols)
        states = self.recognition_extend(self.recognition_start(), symbols, surface)
        return self.recognition_accepts(states, surface)

    # -- conflict checking ----------------------------------------------------

    def check_conflicts(self, max_window: int = 3) -> list[RuleConflict]:
        """Approximate pairwise coercion-conflict check.

        Two rules conflict when, within some context window of up to
        max_window pairs on each side, both coerce the same lexical symbol to
        different surface symbols.  Context overlap beyond the window is not
        examined.
        """
        specs = []
        for cr in self._compiled:
            if not cr.coerce:
                continue
            for br in cr.branches:
                specs.append((cr.name, br))
        conflicts = []
        seen = set()
        n_pairs = len(self._pairs)

        def compatible(ta, aa, tb, ab, starts_acc) -> bool:
            # BFS over the product of two DFAs, looking for a jointly
            # accepting state within max_window steps.
            if starts_acc:
                return True
            frontier = {(0, 0)}
            visited = set(frontier)
            for _ in range(max_window):
                nxt = set()
                for sa, sb in frontier:
                    for pid in range(n_pairs):
                        na = ta[sa][pid]
                        nb = tb[sb][pid]
                        if na < 0 or nb < 0:
                            continue
                        if aa[na] and ab[nb]:
                            return True
                        if (na, nb) not in visited:
                            visited.add((na, nb))
                            nxt.add((na, nb))
                frontier = nxt
                if not frontier:
                    break
            return False

        for i, (name_a, br_a) in enumerate(specs):
            for name_b, br_b in specs[i + 1:]:
                if name_a == name_b:
                    continue
                if br_a.pair.lexical != br_b.pair.lexical:
                    continue
                if br_a.pair.surface == br_b.pair.surface:
                    continue
                key = tuple(sorted((name_a, name_b))) + (br_a.pair.lexical,)
                if key in seen:
                    continue
                left_ok = compatible(
                    br_a.l_trans, br_a.l_acc, br_b.l_trans, br_b.l_acc,
                    br_a.l_acc[0] and br_b.l_acc[0],
                )
                right_ok = compatible(
                    br_a.r_trans, br_a.r_acc, br_b.r_trans, br_b.r_acc,
                    br_a.r_start_acc and br_b.r_start_acc,
                )
                if left_ok and right_ok:
                    seen.add(key)
                    conflicts.append(
                        RuleConflict(
                            rule_a=name_a,
                            rule_b=name_b,
                            lexical=br_a.pair.lexical,
                            surfaces=(br_a.pair.surface, br_b.pair.surface),
                        )
                    )
        conflicts.sort(key=lambda c: (c.rule_a, c.rule_b, c.lexical))
        return conflicts


def compile_rules(alphabet: Alphabet, rules: Sequence[TwoLevelRule]) -> PhonologyEngine:
    return PhonologyEngine(alphabet, rules)


def check_rule_conflicts(
    alphabet: Alphabet, rules: Sequence[TwoLevelRule]
) -> list[RuleConflict]:
    """Run the bounded-window coercion-conflict check over a rule set."""
    return PhonologyEngine(alphabet, rules).check_conflicts()
