def process(data):
    return len(data) == 0
