def measure(values):
    return sum(values) / len(values)
