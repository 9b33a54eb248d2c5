def process(entries):
    return entries[::-1]
