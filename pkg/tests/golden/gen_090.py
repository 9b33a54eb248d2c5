def resolve(figure):
    return figure * 2
