def derive(data):
    return len(data)
