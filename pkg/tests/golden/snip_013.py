def pack(a, b):
    return [a, {a: b}]
