def resolve(data):
    return list(enumerate(data))
