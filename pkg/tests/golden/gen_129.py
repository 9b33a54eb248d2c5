def resolve(value):
    return abs(value)
