"""Write the hand-tokenized golden corpus.

The token lists below were authored by hand from the classification rules;
they are the oracle the lexer is tested against, so they must never be
regenerated from lexer output.
"""
from pathlib import Path

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"

# shorthand
SP = ("Whitespace", " ")
I4 = ("Whitespace", "    ")
I8 = ("Whitespace", "        ")
NL = ("Newline", "\n")


def K(t):
    return ("Keyword", t)


def V(t):
    return ("Variable", t)


def M(t):
    return ("Method", t)


def N(t):
    return ("Number", t)


def S(t):
    return ("Symbol", t)


def O(t):
    return ("Operator", t)


SNIPPETS = {}

SNIPPETS["snip_001"] = (
    "def add(a, b):\n    return a + b\n",
    [K("def"), SP, M("add"), S("("), V("a"), S(","), SP, V("b"), S(")"), S(":"), NL,
     I4, K("return"), SP, V("a"), SP, O("+"), SP, V("b"), NL],
)

SNIPPETS["snip_002"] = (
    "def trim(a_param):\n    return a_param.strip()\n",
    [K("def"), SP, M("trim"), S("("), V("a_param"), S(")"), S(":"), NL,
     I4, K("return"), SP, ("AttributeCall", "a_param.strip"), S("("), S(")"), NL],
)

SNIPPETS["snip_003"] = (
    "def tidy(address):\n    cleaned = address.strip()\n    return cleaned\n",
    [K("def"), SP, M("tidy"), S("("), V("address"), S(")"), S(":"), NL,
     I4, V("cleaned"), SP, O("="), SP, ("AttributeCall", "address.strip"),
     S("("), S(")"), NL,
     I4, K("return"), SP, V("cleaned"), NL],
)

SNIPPETS["snip_004"] = (
    "def show(x):\n    print(int(x))\n",
    [K("def"), SP, M("show"), S("("), V("x"), S(")"), S(":"), NL,
     I4, ("BuiltinMethod", "print"), S("("), ("BuiltinClass", "int"), S("("),
     V("x"), S(")"), S(")"), NL],
)

SNIPPETS["snip_005"] = (
    "class Counter:\n    def bump(self):\n        self.total = self.total + 1\n",
    [K("class"), SP, ("Class", "Counter"), S(":"), NL,
     I4, K("def"), SP, M("bump"), S("("), V("self"), S(")"), S(":"), NL,
     I8, ("AttributeCall", "self.total"), SP, O("="), SP,
     ("AttributeCall", "self.total"), SP, O("+"), SP, N("1"), NL],
)

SNIPPETS["snip_006"] = (
    "def hyp(a, b):\n    return math.sqrt(a * a + b * b)\n",
    [K("def"), SP, M("hyp"), S("("), V("a"), S(","), SP, V("b"), S(")"), S(":"), NL,
     I4, K("return"), SP, ("BuiltinMethCall", "math.sqrt"), S("("),
     V("a"), SP, O("*"), SP, V("a"), SP, O("+"), SP,
     V("b"), SP, O("*"), SP, V("b"), S(")"), NL],
)

SNIPPETS["snip_007"] = (
    "def area(r):\n    return math.pi * r * r\n",
    [K("def"), SP, M("area"), S("("), V("r"), S(")"), S(":"), NL,
     I4, K("return"), SP, ("BuiltinAttribute", "math.pi"), SP, O("*"), SP,
     V("r"), SP, O("*"), SP, V("r"), NL],
)

SNIPPETS["snip_008"] = (
    "def clamp(x):\n    if x >= 10:\n        x = 10\n    return x\n",
    [K("def"), SP, M("clamp"), S("("), V("x"), S(")"), S(":"), NL,
     I4, K("if"), SP, V("x"), SP, O(">="), SP, N("10"), S(":"), NL,
     I8, V("x"), SP, O("="), SP, N("10"), NL,
     I4, K("return"), SP, V("x"), NL],
)

SNIPPETS["snip_009"] = (
    "def inc(x):\n    x += 1\n    return x\n",
    [K("def"), SP, M("inc"), S("("), V("x"), S(")"), S(":"), NL,
     I4, V("x"), SP, O("+"), O("="), SP, N("1"), NL,
     I4, K("return"), SP, V("x"), NL],
)

SNIPPETS["snip_010"] = (
    'def greet(name):\n    msg = "hello"\n    print(msg)\n',
    [K("def"), SP, M("greet"), S("("), V("name"), S(")"), S(":"), NL,
     I4, V("msg"), SP, O("="), SP, ("Placeholder", "STR"), NL,
     I4, ("BuiltinMethod", "print"), S("("), V("msg"), S(")"), NL],
)

SNIPPETS["snip_011"] = (
    "def double(x):  # twice\n    return x * 2\n",
    [K("def"), SP, M("double"), S("("), V("x"), S(")"), S(":"), NL,
     I4, K("return"), SP, V("x"), SP, O("*"), SP, N("2"), NL],
)

SNIPPETS["snip_012"] = (
    "def total(n):\n    s = 0\n    for i in range(n):\n        s = s + i\n    return s\n",
    [K("def"), SP, M("total"), S("("), V("n"), S(")"), S(":"), NL,
     I4, V("s"), SP, O("="), SP, N("0"), NL,
     I4, K("for"), SP, V("i"), SP, K("in"), SP, ("BuiltinMethod", "range"),
     S("("), V("n"), S(")"), S(":"), NL,
     I8, V("s"), SP, O("="), SP, V("s"), SP, O("+"), SP, V("i"), NL,
     I4, K("return"), SP, V("s"), NL],
)

SNIPPETS["snip_013"] = (
    "def pack(a, b):\n    return [a, {a: b}]\n",
    [K("def"), SP, M("pack"), S("("), V("a"), S(","), SP, V("b"), S(")"), S(":"), NL,
     I4, K("return"), SP, S("["), V("a"), S(","), SP, S("{"), V("a"), S(":"), SP,
     V("b"), S("}"), S("]"), NL],
)

SNIPPETS["snip_014"] = (
    "def scale(x):\n    return x * 1.5 + 2e3\n",
    [K("def"), SP, M("scale"), S("("), V("x"), S(")"), S(":"), NL,
     I4, K("return"), SP, V("x"), SP, O("*"), SP, N("1.5"), SP, O("+"), SP,
     N("2e3"), NL],
)

SNIPPETS["snip_015"] = (
    "def countdown(n):\n    while n > 0:\n        n = n - 1\n    return n\n",
    [K("def"), SP, M("countdown"), S("("), V("n"), S(")"), S(":"), NL,
     I4, K("while"), SP, V("n"), SP, O(">"), SP, N("0"), S(":"), NL,
     I8, V("n"), SP, O("="), SP, V("n"), SP, O("-"), SP, N("1"), NL,
     I4, K("return"), SP, V("n"), NL],
)

SNIPPETS["snip_016"] = (
    "def helper(x):\n    return x + 1\n\ndef outer(obj):\n    return obj.helper(5)\n",
    [K("def"), SP, M("helper"), S("("), V("x"), S(")"), S(":"), NL,
     I4, K("return"), SP, V("x"), SP, O("+"), SP, N("1"), NL, NL,
     K("def"), SP, M("outer"), S("("), V("obj"), S(")"), S(":"), NL,
     I4, K("return"), SP, ("MethodCall", "obj.helper"), S("("), N("5"), S(")"), NL],
)

SNIPPETS["snip_017"] = (
    "def argc():\n    return len(sys.argv)\n",
    [K("def"), SP, M("argc"), S("("), S(")"), S(":"), NL,
     I4, K("return"), SP, ("BuiltinMethod", "len"), S("("),
     ("BuiltinAttribute", "sys.argv"), S(")"), NL],
)

SNIPPETS["snip_018"] = (
    "def order(xs):\n    return sorted(xs, key=len)\n",
    [K("def"), SP, M("order"), S("("), V("xs"), S(")"), S(":"), NL,
     I4, K("return"), SP, ("BuiltinMethod", "sorted"), S("("), V("xs"), S(","), SP,
     V("key"), O("="), V("len"), S(")"), NL],
)

SNIPPETS["snip_019"] = (
    "@property\ndef value(self):\n    return self.v\n",
    [O("@"), V("property"), NL,
     K("def"), SP, M("value"), S("("), V("self"), S(")"), S(":"), NL,
     I4, K("return"), SP, ("AttributeCall", "self.v"), NL],
)

SNIPPETS["snip_020"] = (
    "class Point(object):\n    def norm(self):\n        return abs(self.x)\n",
    [K("class"), SP, ("Class", "Point"), S("("), ("BuiltinClass", "object"), S(")"),
     S(":"), NL,
     I4, K("def"), SP, M("norm"), S("("), V("self"), S(")"), S(":"), NL,
     I8, K("return"), SP, ("BuiltinMethod", "abs"), S("("),
     ("AttributeCall", "self.x"), S(")"), NL],
)

SNIPPETS["snip_021"] = (
    "def join2(a, b):\n    return os.path.join(a, b)\n",
    [K("def"), SP, M("join2"), S("("), V("a"), S(","), SP, V("b"), S(")"), S(":"), NL,
     I4, K("return"), SP, ("BuiltinMethCall", "os.path.join"), S("("),
     V("a"), S(","), SP, V("b"), S(")"), NL],
)

SNIPPETS["snip_022"] = (
    "def fetch(client):\n    return client.session.get()\n",
    [K("def"), SP, M("fetch"), S("("), V("client"), S(")"), S(":"), NL,
     I4, K("return"), SP, ("AttributeCall", "client.session.get"), S("("), S(")"), NL],
)

SNIPPETS["snip_023"] = (
    "def head(xs):\n    return sorted(xs).pop()\n",
    [K("def"), SP, M("head"), S("("), V("xs"), S(")"), S(":"), NL,
     I4, K("return"), SP, ("BuiltinMethod", "sorted"), S("("), V("xs"), S(")"),
     S("."), ("AttributeCall", "pop"), S("("), S(")"), NL],
)

SNIPPETS["snip_024"] = (
    "def mask(x):\n    return x & 0xff\n",
    [K("def"), SP, M("mask"), S("("), V("x"), S(")"), S(":"), NL,
     I4, K("return"), SP, V("x"), SP, O("&"), SP, N("0xff"), NL],
)

SNIPPETS["snip_025"] = (
    'def doc():\n    """Summary line."""\n    return None\n',
    [K("def"), SP, M("doc"), S("("), S(")"), S(":"), NL,
     I4, ("Placeholder", "STR"), NL,
     I4, K("return"), SP, K("None"), NL],
)

SNIPPETS["snip_026"] = (
    "def when():\n    return datetime.datetime(2020, 1, 1)\n",
    [K("def"), SP, M("when"), S("("), S(")"), S(":"), NL,
     I4, K("return"), SP, ("BuiltinAttrCall", "datetime.datetime"), S("("),
     N("2020"), S(","), SP, N("1"), S(","), SP, N("1"), S(")"), NL],
)


def escape(text):
    return text.replace("\\", "\\\\").replace("\n", "\\n").replace("\t", "\\t")


def main():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, (code, tokens) in sorted(SNIPPETS.items()):
        (GOLDEN / f"{name}.py").write_text(code, encoding="utf-8")
        lines = "".join(f"{comp}\t{escape(text)}\n" for comp, text in tokens)
        (GOLDEN / f"{name}.tokens").write_text(lines, encoding="utf-8")
    print(f"wrote {len(SNIPPETS)} snippet pairs to {GOLDEN}")


if __name__ == "__main__":
    main()
