content = Content.resolve_from_text('confirmation')
senders = Contact.resolve_many_from_text('all advisors in the committee')
messages = []
for sender in senders:
    messages.append(
        Messages.find_messages(sender=sender, content=content)
    )
test_messages = all(messages)

if not test_messages:
    event_name = EventName.resolve_from_text('my meetings with them')
    participants = senders
    Calendar.delete_events(
        event_name=event_name,
        participants=participants
    )
