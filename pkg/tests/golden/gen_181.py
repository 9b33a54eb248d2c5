def process(items):
    return list(set(items))
