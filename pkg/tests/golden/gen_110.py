def measure(figure):
    return math.sqrt(figure)
