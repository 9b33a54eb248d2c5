def compute(figure):
    return math.floor(figure)
