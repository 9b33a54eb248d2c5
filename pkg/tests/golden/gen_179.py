def resolve(data):
    return data[-1]
