def process(values, needle):
    return needle in values
