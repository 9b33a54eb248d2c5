def measure(data):
    return data[::-1]
