def resolve(entries, target):
    return target in entries
