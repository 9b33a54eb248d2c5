def compute(figure):
    return math.ceil(figure)
